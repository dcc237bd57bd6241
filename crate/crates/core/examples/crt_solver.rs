use abnormal_forge::nt::{coprimizing_multiplier, crt_min_solution, FactorBudget, PrimalityPolicy, ResidueConstraint};
use num_bigint::BigUint;

fn main() {
    let system = [
        ResidueConstraint::only(3u32, [2]),
        ResidueConstraint::only(5u32, [3]),
        ResidueConstraint::only(7u32, [2]),
    ];
    println!("x ≡ 2 (3), 3 (5), 2 (7): {}", crt_min_solution(&system).unwrap());

    let sets = [
        ResidueConstraint::only(7u32, [3, 5, 6]),
        ResidueConstraint::only(11u32, [1, 4, 9]),
    ];
    println!("x mod 7 ∈ {{3,5,6}}, x mod 11 ∈ {{1,4,9}}: {}", crt_min_solution(&sets).unwrap());

    let avoid = [BigUint::from(2u8), BigUint::from(3u8)];
    let dodge = [
        ResidueConstraint::except(BigUint::from(4u8), vec![avoid[0].clone()]),
        ResidueConstraint::except(BigUint::from(9u8), vec![avoid[1].clone(), BigUint::from(0u8)]),
    ];
    println!("least x ≢ 2 (4), x ∉ {{0,3}} (9): {}", crt_min_solution(&dodge).unwrap());

    // the multiplier that starts every block
    let q = BigUint::from(13u8);
    let q_prev = BigUint::from(10u8);
    let avoid = BigUint::from(2u8 * 12);
    let ell = coprimizing_multiplier(&q, &q_prev, &avoid, &FactorBudget::default(), &PrimalityPolicy::default()).unwrap();
    println!("ℓ = {ell}: {}·13 + 10 = {} is coprime to 24", ell, &ell * &q + &q_prev);
}
