use mrb_core::random::{basis_words, random_element_of_degree, rng};
use mrb_core::{BaseInstance, HopfContext, MrbElement, MrbSquare, Rational, TensorWord};

fn ctx(lambda: i64) -> HopfContext {
    HopfContext::new(BaseInstance::Trivial, Rational::from(lambda)).unwrap()
}

/// `Σ_r u_r ⊗ u_{n−r} + Σ_{r<n} u_r ⊗ u_{n−1−r}`
fn expected_coproduct(n: usize) -> MrbSquare {
    let one = Rational::one();
    let mut terms: Vec<_> = (0..=n)
        .map(|r| (one.clone(), (TensorWord::u(r), TensorWord::u(n - r))))
        .collect();
    terms.extend((0..n).map(|r| (one.clone(), (TensorWord::u(r), TensorWord::u(n - 1 - r)))));
    MrbSquare::from_terms(&BaseInstance::Trivial, terms).unwrap()
}

#[test]
fn coproduct_and_counit_of_u_n() {
    let h = ctx(1);
    for n in 0..=8 {
        assert_eq!(
            h.coproduct(&MrbElement::u(n)).unwrap(),
            expected_coproduct(n),
            "n = {n}"
        );
        let sign = if n % 2 == 0 { 1 } else { -1 };
        assert_eq!(h.counit(&MrbElement::u(n)).unwrap(), Rational::from(sign));
    }
}

#[test]
fn counit_scales_with_lambda() {
    for l in [2i64, -3] {
        let h = ctx(l);
        for n in 0..5 {
            assert_eq!(
                h.counit(&MrbElement::u(n)).unwrap(),
                Rational::from(-l).pow(n as i32)
            );
        }
    }
}

fn t_map(h: &HopfContext, x: &MrbElement) -> MrbElement {
    let e = h.counit(x).unwrap();
    x.sub(&MrbElement::one(x.instance()).scale(&e)).unwrap()
}

/// `T^{*j}(x)` with `T = id − uε`, straight from the convolution definition.
fn t_power(h: &HopfContext, j: usize, x: &MrbElement) -> MrbElement {
    let inst = x.instance();
    if j == 0 {
        return MrbElement::one(inst).scale(&h.counit(x).unwrap());
    }
    let mut acc = MrbElement::zero(inst);
    for ((l, r), c) in h.coproduct(x).unwrap().terms().iter() {
        let left = t_power(h, j - 1, &MrbElement::word(inst, l.clone()).unwrap());
        let right = t_map(h, &MrbElement::word(inst, r.clone()).unwrap());
        acc = acc
            .add(&h.mrb().diamond(&left, &right).unwrap().scale(c))
            .unwrap();
    }
    acc
}

/// `S = Σ_j (−T)^{*j}`; the sum stops once `j` exceeds the degree.
fn antipode_series(h: &HopfContext, x: &MrbElement) -> MrbElement {
    let deg = x.degree().unwrap().max(0) as usize;
    let mut acc = MrbElement::zero(x.instance());
    for j in 0..=deg {
        let sign = Rational::from(if j % 2 == 0 { 1 } else { -1 });
        acc = acc.add(&t_power(h, j, x).scale(&sign)).unwrap();
    }
    acc
}

#[test]
fn antipode_matches_series_oracle() {
    for (inst, deg, lambdas) in [
        (BaseInstance::Trivial, 4, vec![1i64, 2, -1]),
        (BaseInstance::polynomial(["x"]), 3, vec![1]),
    ] {
        for l in lambdas {
            let h = HopfContext::new(inst.clone(), Rational::from(l)).unwrap();
            for w in basis_words(&inst, deg) {
                let x = MrbElement::word(&inst, w.clone()).unwrap();
                assert_eq!(
                    h.antipode(&x).unwrap(),
                    antipode_series(&h, &x),
                    "{inst}, lambda = {l}, {w}"
                );
            }
        }
    }
}

#[test]
fn antipode_of_u1_by_hand() {
    // S(u1)·u0 + S(u0)·u1 + λ S(u0)·u0 = ε(u1) u0 = −λ u0
    for l in [1i64, 3, -2] {
        let h = ctx(l);
        let lambda = Rational::from(l);
        let want = MrbElement::u(1)
            .neg()
            .sub(&MrbElement::u(0).scale(&(Rational::from(2) * lambda)))
            .unwrap();
        assert_eq!(h.antipode(&MrbElement::u(1)).unwrap(), want);
    }
    let h = ctx(1);
    let u2 = h.antipode(&MrbElement::u(2)).unwrap();
    assert_eq!(u2.to_string(), "u_2 + 2*u_1 + 2*u_0");
}

#[test]
fn antipode_axioms_on_basis() {
    for (inst, deg) in [
        (BaseInstance::Trivial, 5),
        (BaseInstance::polynomial(["x"]), 4),
    ] {
        let h = HopfContext::new(inst.clone(), Rational::one()).unwrap();
        let c = h.check_antipode(deg);
        assert!(c.passed(), "{c}");
        assert_eq!(c.cases, basis_words(&inst, deg).len());
    }
}

#[test]
fn bialgebra_axioms() {
    for (inst, deg) in [
        (BaseInstance::Trivial, 5),
        (BaseInstance::polynomial(["x"]), 4),
    ] {
        let h = HopfContext::new(inst.clone(), Rational::one()).unwrap();
        for c in h.verify_bialgebra(100, 11, deg) {
            assert!(c.passed(), "{inst}: {c}");
        }
        assert!(h.check_cocycle(100, 11, deg).passed());
    }
}

#[test]
fn filtration_by_degree() {
    let inst = BaseInstance::Trivial;
    let h = ctx(1);
    assert!(h.check_filtration(100, 5, 6).passed());
    let mut r = rng(99);
    for _ in 0..50 {
        let a = random_element_of_degree(&mut r, &inst, 3, 2);
        let b = random_element_of_degree(&mut r, &inst, 3, 2);
        let ab = h.mrb().diamond(&a, &b).unwrap();
        assert!(ab.degree().unwrap() <= a.degree().unwrap() + b.degree().unwrap());
        for ((l, rr), _) in h.coproduct(&ab).unwrap().terms().iter() {
            assert!(l.degree() + rr.degree() <= ab.degree().unwrap());
        }
    }
}

#[test]
fn laurent_base_has_no_coalgebra() {
    assert!(HopfContext::new(BaseInstance::laurent("e"), Rational::one()).is_err());
}
