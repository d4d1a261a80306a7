use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use twisted_sylow::{
    BruhatForm, Field, FieldElement, Matrix, Ree, ReeParams, SquareClass, Suzuki, TwistedGroup,
    UPlusParams,
};

const ORDERS: [u64; 8] = [2, 8, 32, 2_147_483_648, 3, 27, 2187, 617_673_396_283_947];

fn fields() -> &'static [Arc<Field>] {
    static FIELDS: OnceLock<Vec<Arc<Field>>> = OnceLock::new();
    FIELDS.get_or_init(|| {
        ORDERS
            .iter()
            .map(|&q| Arc::new(Field::with_order(q).unwrap()))
            .collect()
    })
}

fn elem(f: &Field, raw: u64) -> FieldElement {
    f.from_int(raw % f.order()).unwrap()
}

fn field_and(n: usize) -> impl Strategy<Value = (Arc<Field>, Vec<u64>)> {
    (0..ORDERS.len(), proptest::collection::vec(any::<u64>(), n))
        .prop_map(|(i, raw)| (fields()[i].clone(), raw))
}

proptest! {
    #[test]
    fn field_axioms((f, raw) in field_and(3)) {
        let [a, b, c] = [elem(&f, raw[0]), elem(&f, raw[1]), elem(&f, raw[2])];
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            prop_assert_eq!(f.pow(a, f.order() - 1), f.one());
        } else {
            prop_assert!(f.inv(a).is_err());
        }
    }

    #[test]
    fn frobenius_and_theta((f, raw) in field_and(2)) {
        let [a, b] = [elem(&f, raw[0]), elem(&f, raw[1])];
        let p = u64::from(f.characteristic());
        prop_assert_eq!(f.frobenius(a), f.pow(a, p));
        prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.pow(a, f.order()), a);
        prop_assert_eq!(f.theta_pow(a), f.pow(a, f.theta()));
        prop_assert_eq!(f.theta_unpow(f.theta_pow(a)), a);
        prop_assert_eq!(f.theta_pow(f.theta_unpow(a)), a);
        // Applying θ twice is the p-th power map up to one Frobenius: θ² = q/p.
        prop_assert_eq!(f.frobenius(f.theta_pow(f.theta_pow(a))), a);
    }

    #[test]
    fn square_roots((f, raw) in field_and(1)) {
        let a = elem(&f, raw[0]);
        if f.characteristic() == 2 {
            let r = f.sqrt_char2(a).unwrap();
            prop_assert_eq!(f.square(r), a);
        } else if a.is_zero() {
            prop_assert!(f.sqrt_char3(a).is_err());
        } else {
            let (l, class) = f.sqrt_char3(a).unwrap();
            prop_assert_eq!(f.mul(f.from_i64(class.sign()), f.square(l)), a);
            let other = if class == SquareClass::Square { -1 } else { 1 };
            let flipped = f.mul(f.from_i64(-1), a);
            prop_assert_eq!(f.sqrt_char3(flipped).unwrap().1.sign(), other);
        }
    }

    #[test]
    fn element_text_round_trip((f, raw) in field_and(1)) {
        let a = elem(&f, raw[0]);
        prop_assert_eq!(f.parse_element(&f.to_int(a).to_string()).unwrap(), a);
        prop_assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
        prop_assert_eq!(f.to_int(f.from_int(raw[0] % f.order()).unwrap()), raw[0] % f.order());
    }

    #[test]
    fn pow_signed_is_a_homomorphism((f, raw) in field_and(1), j in -500i64..500, k in -500i64..500) {
        let a = elem(&f, raw[0]);
        prop_assume!(!a.is_zero());
        prop_assert_eq!(
            f.mul(f.pow_signed(a, j), f.pow_signed(a, k)),
            f.pow_signed(a, j + k)
        );
    }
}

fn suzuki(i: usize) -> &'static Suzuki {
    static GROUPS: OnceLock<Vec<Suzuki>> = OnceLock::new();
    &GROUPS.get_or_init(|| {
        [8, 32, 128, 2_147_483_648]
            .iter()
            .map(|&q| Suzuki::with_order(q).unwrap())
            .collect()
    })[i]
}

fn ree(i: usize) -> &'static Ree {
    static GROUPS: OnceLock<Vec<Ree>> = OnceLock::new();
    &GROUPS.get_or_init(|| {
        [3, 27, 243, 617_673_396_283_947]
            .iter()
            .map(|&q| Ree::with_order(q).unwrap())
            .collect()
    })[i]
}

fn check_group<G: TwistedGroup>(g: &G, seed: u64) -> Result<(), TestCaseError> {
    let m = g.random_element(seed);
    let form = g.bruhat(&m).unwrap();
    prop_assert_eq!(&g.rebuild(&form).unwrap(), &m);
    let fac = g.factor(&m).unwrap();
    prop_assert!(g.check_factorization(&m, &fac));
    let inv = m.inverse().unwrap();
    prop_assert!(g.is_member(&inv));
    let n = g.random_element(seed ^ 0x9e37_79b9_7f4a_7c15);
    prop_assert!(g.is_member(&(&m * &n)));
    if let BruhatForm::TorusCell { u, .. } = form {
        prop_assert!(g.is_in_u(&g.x_plus(u)));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn suzuki_elements(i in 0usize..4, seed in any::<u64>()) {
        check_group(suzuki(i), seed)?;
    }

    #[test]
    fn ree_elements(i in 0usize..4, seed in any::<u64>()) {
        check_group(ree(i), seed)?;
    }

    #[test]
    fn suzuki_unipotent_round_trip(i in 0usize..4, t in any::<u64>(), u in any::<u64>()) {
        let g = suzuki(i);
        let f = g.field();
        let p = UPlusParams::new(elem(f, t), elem(f, u));
        let x = TwistedGroup::x_plus(g, p);
        prop_assert_eq!(g.extract_uplus(&x).unwrap(), p);
        prop_assert!(x.preserves_symplectic_form().unwrap());
        prop_assert_eq!(TwistedGroup::extract_uminus(g, &TwistedGroup::x_minus(g, p)).unwrap(), p);
    }

    #[test]
    fn ree_unipotent_round_trip(i in 0usize..4, t in any::<u64>(), u in any::<u64>(), v in any::<u64>()) {
        let g = ree(i);
        let f = g.chevalley().field();
        let p = ReeParams::new(elem(f, t), elem(f, u), elem(f, v));
        let x = TwistedGroup::x_plus(g, p);
        prop_assert_eq!(g.extract_uplus(&x).unwrap(), p);
        prop_assert_eq!(TwistedGroup::extract_uminus(g, &TwistedGroup::x_minus(g, p)).unwrap(), p);
        prop_assert!(x.is_upper_unitriangular());
    }

    #[test]
    fn matrix_text_and_inverse(i in 0usize..4, seed in any::<u64>()) {
        let g = ree(i);
        let m = g.random_element(seed);
        let f = g.chevalley().field();
        prop_assert_eq!(&Matrix::parse(f, 7, &m.to_text()).unwrap(), &m);
        prop_assert!((&m * &m.inverse().unwrap()).is_identity());
        prop_assert_eq!(m.determinant(), f.one());
    }
}
