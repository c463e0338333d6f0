use bochner::classical::{gram_schmidt_ops, MomentFunctional};
use bochner::{DiffOperator, Poly, Rat, KRALL_LEGENDRE_JSON};

fn krall() -> DiffOperator {
    DiffOperator::from_json(KRALL_LEGENDRE_JSON).unwrap()
}

#[test]
fn bundled_operator_is_admissible_order_four() {
    let op = krall();
    assert_eq!(op.order(), 4);
    assert!(op.is_admissible());
    assert_eq!(op.leading(), &Poly::from_i64s(&[1, 0, -1]).pow(2));
    assert!(op.validate().spectral_growth);
}

#[test]
fn eigenvalues_follow_closed_form() {
    // n(n+1)(n^2 + n + 2) for the unit point masses.
    let op = krall();
    for n in 0..30u64 {
        let expected = Rat::from(n * (n + 1) * (n * n + n + 2));
        assert_eq!(op.eigenvalue(n as usize), expected, "n={n}");
    }
}

/// Lebesgue measure on [-1, 1] plus unit masses at both endpoints.
fn krall_moments(len: usize) -> MomentFunctional {
    let uniform = MomentFunctional::uniform(len);
    let moments = uniform
        .moments()
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let endpoint = if k % 2 == 0 { 2 } else { 0 };
            Rat::from(m + endpoint)
        })
        .collect();
    MomentFunctional::new(moments)
}

#[test]
fn eigenpolynomials_are_orthogonal_for_the_krall_measure() {
    let op = krall();
    let ops = gram_schmidt_ops(&krall_moments(41), 20).unwrap();
    for (n, p) in ops.iter().enumerate() {
        assert_eq!(&op.eigenpolynomial(n).unwrap(), p, "n={n}");
    }
}

#[test]
fn round_trips_through_json() {
    let op = krall();
    assert_eq!(DiffOperator::from_json(&op.to_json()).unwrap(), op);
}
