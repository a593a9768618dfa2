//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fail.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};

use mrb_core::operators::{
    check_mrb, check_rb, free_operator, laurent_carrier, laurent_pole_rb, laurent_split, negate,
    rb_to_mrb, scale_weight, ScaleDirection,
};
use mrb_core::random::basis_words;
use mrb_core::stuffle::{
    closed_form_trivial, count_j, deflate, enumerate_j, stuffle_pair_product, stuffle_product,
    InjectionPair,
};
use mrb_core::verify::{engine_equivalence, ring_laws};
use mrb_core::{
    BaseInstance, HopfContext, Monomial, MrbContext, MrbElement, MrbSquare, Rational, TensorWord,
};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn u_comb(terms: &[(Rational, usize)]) -> MrbElement {
    MrbElement::from_terms(
        &BaseInstance::Trivial,
        terms.iter().map(|(c, n)| (c.clone(), TensorWord::u(*n))),
    )
    .unwrap()
}

fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn golden_table() -> Check {
    for k in [-1i64, 0, 2, -4] {
        let kappa = Rational::from(k);
        let ctx = MrbContext::new(BaseInstance::Trivial, kappa.clone());
        let d = |m, n| ctx.diamond(&MrbElement::u(m), &MrbElement::u(n)).unwrap();
        let c = Rational::from;
        for n in 0..=6 {
            ensure(d(0, n) == MrbElement::u(n), || {
                format!("u_0 * u_{n}, kappa = {k}")
            })?;
        }
        let rows = [
            (1, 1, u_comb(&[(c(2), 2), (kappa.clone(), 0)])),
            (1, 2, u_comb(&[(c(3), 3), (c(2) * kappa.clone(), 1)])),
            (
                2,
                2,
                u_comb(&[
                    (c(6), 4),
                    (c(6) * kappa.clone(), 2),
                    (kappa.clone() * kappa.clone(), 0),
                ]),
            ),
        ];
        for (m, n, want) in rows {
            let got = d(m, n);
            ensure(got == want, || {
                format!("u_{m} * u_{n} = {got}, expected {want} (kappa = {k})")
            })?;
        }
    }
    Ok(())
}

fn closed_form() -> Check {
    let kappa = Rational::from(-1);
    let ctx = MrbContext::new(BaseInstance::Trivial, kappa.clone());
    let mut cases = 0;
    for m in 0..=6u64 {
        for n in 0..=6u64 {
            // independent oracle: the binomial sum with plain integers
            let oracle = u_comb(
                &(0..=m.min(n))
                    .map(|r| {
                        let c = choose(m + n - r, m) * choose(m, r);
                        (
                            Rational::from(c as i64) * kappa.pow(r as i32),
                            (m + n - 2 * r) as usize,
                        )
                    })
                    .collect::<Vec<_>>(),
            );
            let got = ctx
                .diamond(&MrbElement::u(m as usize), &MrbElement::u(n as usize))
                .unwrap();
            let formula = closed_form_trivial(m as usize, n as usize, &kappa);
            ensure(got == formula && got == oracle, || {
                format!("u_{m} * u_{n} = {got}, formula {formula}")
            })?;
            cases += 1;
        }
    }
    ensure(cases == 49, || format!("{cases} cases"))
}

fn sym(prefix: &str, len: usize) -> TensorWord {
    TensorWord::new(
        (0..len)
            .map(|i| Monomial::var(&format!("{prefix}{i}")))
            .collect(),
    )
    .unwrap()
}

fn word(slots: &[&[&str]]) -> TensorWord {
    let mono = |names: &[&str]| {
        names
            .iter()
            .fold(Monomial::one(), |acc, g| acc.mul(&Monomial::var(g)))
    };
    TensorWord::new(slots.iter().map(|s| mono(s)).collect()).unwrap()
}

fn worked_pair() -> Check {
    let p = InjectionPair::new(5, 4, 3, vec![1, 2, 4, 5, 6], vec![1, 3, 4, 5])
        .map_err(|e| e.to_string())?;
    let t = deflate(&p);
    ensure(t.phi_tilde == [0, 1, 2, 2, 3], || {
        format!("phi~ = {:?}", t.phi_tilde)
    })?;
    ensure(t.psi_tilde == [0, 2, 2, 2], || {
        format!("psi~ = {:?}", t.psi_tilde)
    })?;
    let got = stuffle_pair_product(&sym("a", 6), &sym("b", 5), &p).map_err(|e| e.to_string())?;
    let want = word(&[
        &["a0", "b0", "a1", "b1"],
        &["a2"],
        &["b2", "a3", "b3", "a4", "b4"],
        &["a5"],
    ]);
    ensure(got == want, || format!("product {got}, expected {want}"))
}

fn five_terms() -> Check {
    let inst = BaseInstance::polynomial(["a0", "a1", "b0", "b1", "b2"]);
    let kappa = Rational::new(-5, 3);
    let ctx = MrbContext::new(inst.clone(), kappa.clone());
    let a = MrbElement::word(&inst, sym("a", 2)).unwrap();
    let b = MrbElement::word(&inst, sym("b", 3)).unwrap();
    let got = stuffle_product(&ctx, &a, &b).map_err(|e| e.to_string())?;
    let one = Rational::one();
    let want = MrbElement::from_terms(
        &inst,
        [
            (
                one.clone(),
                word(&[&["a0", "b0"], &["a1"], &["b1"], &["b2"]]),
            ),
            (
                one.clone(),
                word(&[&["a0", "b0"], &["b1"], &["a1"], &["b2"]]),
            ),
            (one, word(&[&["a0", "b0"], &["b1"], &["b2"], &["a1"]])),
            (kappa.clone(), word(&[&["a0", "b0", "a1", "b1"], &["b2"]])),
            (kappa, word(&[&["a0", "b0"], &["b1", "a1", "b2"]])),
        ],
    )
    .unwrap();
    ensure(got == want && got.terms().len() == 5, || {
        format!("got {got}")
    })
}

fn engines() -> Check {
    let c = engine_equivalence(200, 0);
    ensure(c.passed() && c.cases == 200 * 6, || c.to_string())
}

fn ring() -> Check {
    for c in ring_laws(200, 0) {
        ensure(c.passed(), || c.to_string())?;
    }
    Ok(())
}

fn operator_identity() -> Check {
    for inst in [BaseInstance::Trivial, BaseInstance::polynomial(["x", "y"])] {
        for k in [-1i64, 0, 2] {
            let ctx = MrbContext::new(inst.clone(), Rational::from(k));
            let p = check_mrb(&free_operator(&ctx), 200, 0);
            ensure(p.passed() && p.samples == 200, || p.to_string())?;
            let sq = check_mrb(&mrb_core::hopf::square_operator(&ctx), 200, 0);
            ensure(sq.passed(), || sq.to_string())?;
        }
    }
    Ok(())
}

fn hopf_golden() -> Check {
    let h = HopfContext::new(BaseInstance::Trivial, Rational::one()).map_err(|e| e.to_string())?;
    for n in 0..=8usize {
        let one = Rational::one();
        let mut terms: Vec<_> = (0..=n)
            .map(|r| (one.clone(), (TensorWord::u(r), TensorWord::u(n - r))))
            .collect();
        terms.extend((0..n).map(|r| (one.clone(), (TensorWord::u(r), TensorWord::u(n - 1 - r)))));
        let want = MrbSquare::from_terms(&BaseInstance::Trivial, terms).unwrap();
        let got = h.coproduct(&MrbElement::u(n)).unwrap();
        ensure(got == want, || format!("coproduct of u_{n} differs"))?;
        let e = h.counit(&MrbElement::u(n)).unwrap();
        ensure(e == Rational::from(if n % 2 == 0 { 1 } else { -1 }), || {
            format!("counit(u_{n}) = {e}")
        })?;
    }
    Ok(())
}

fn bialgebra() -> Check {
    for (inst, deg) in [
        (BaseInstance::Trivial, 5),
        (BaseInstance::polynomial(["x"]), 4),
    ] {
        let h = HopfContext::new(inst.clone(), Rational::one()).map_err(|e| e.to_string())?;
        for c in h.verify_bialgebra(100, 0, deg) {
            ensure(c.passed(), || format!("{inst}: {c}"))?;
        }
    }
    Ok(())
}

fn antipode() -> Check {
    for (inst, deg) in [
        (BaseInstance::Trivial, 5),
        (BaseInstance::polynomial(["x"]), 4),
    ] {
        let h = HopfContext::new(inst.clone(), Rational::one()).map_err(|e| e.to_string())?;
        let c = h.check_antipode(deg);
        ensure(
            c.passed() && c.cases == basis_words(&inst, deg).len(),
            || format!("{inst}: {c}"),
        )?;
    }
    // degreewise: S(u1) + u1 + λ S(u0) = ε(u1) = −λ, with S(u0) = u0
    for l in [1i64, 2, -3] {
        let lambda = Rational::from(l);
        let h = HopfContext::new(BaseInstance::Trivial, lambda.clone()).unwrap();
        let oracle = u_comb(&[(Rational::from(-1), 1), (-(Rational::from(2) * lambda), 0)]);
        let got = h.antipode(&MrbElement::u(1)).unwrap();
        ensure(got == oracle, || format!("S(u_1) = {got} at lambda = {l}"))?;
    }
    Ok(())
}

fn filtration() -> Check {
    let h = HopfContext::new(BaseInstance::Trivial, Rational::one()).unwrap();
    let c = h.check_filtration(100, 0, 6);
    ensure(c.passed(), || c.to_string())
}

fn operator_suite() -> Check {
    let carrier = laurent_carrier();
    let split = laurent_split(&carrier);
    let r = check_mrb(&split, 200, 0);
    ensure(r.passed() && split.weight() == &Rational::from(-1), || {
        r.to_string()
    })?;
    let rb = laurent_pole_rb(&carrier);
    ensure(check_rb(&rb, 200, 0).passed(), || {
        "pole projection is not Rota-Baxter".into()
    })?;
    let q = rb_to_mrb(&rb, 200, 0).map_err(|e| e.to_string())?;
    for k in -3..=3 {
        let e = carrier.power(k);
        ensure(split.apply(&split.apply(&e)) == e, || {
            format!("P^2 != id on e^{k}")
        })?;
        ensure(q.apply(&e) == split.apply(&e), || {
            format!("converted operator differs on e^{k}")
        })?;
    }
    let ctx = MrbContext::new(BaseInstance::Trivial, Rational::one());
    let p = free_operator(&ctx);
    let kappa = Rational::new(-3, 2);
    let up = scale_weight(&p, &kappa, ScaleDirection::Up).map_err(|e| e.to_string())?;
    ensure(check_mrb(&up, 100, 0).passed(), || {
        "scaled operator fails".into()
    })?;
    let down = scale_weight(&up, &kappa, ScaleDirection::Down).map_err(|e| e.to_string())?;
    for n in 0..4 {
        let x = MrbElement::u(n);
        ensure(
            down.apply(&x) == p.apply(&x) && down.weight().is_one(),
            || "scaling does not round-trip".into(),
        )?;
    }
    let neg = check_mrb(&negate(&split), 200, 0);
    ensure(neg.passed(), || neg.to_string())
}

fn counting() -> Check {
    for m in 1..=5usize {
        for n in 1..=5usize {
            for r in 0..=m.min(n) {
                let formula = choose((m + n - r) as u64, m as u64) * choose(m as u64, r as u64);
                let listed = enumerate_j(m, n, r).map_err(|e| e.to_string())?.len() as u64;
                let counted = count_j(m, n, r).map_err(|e| e.to_string())?;
                ensure(
                    listed == formula && counted == Rational::from(formula as i64),
                    || format!("|J({m},{n},{r})| = {listed}, formula {formula}"),
                )?;
            }
        }
    }
    Ok(())
}

fn cli() -> Check {
    let bin = env!("CARGO_BIN_EXE_mrb");
    let out = Command::new(bin)
        .args(["eval", "-e", "u_1*u_1", "--kappa", "-1"])
        .env_remove("MRB_SEED")
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure(
        out.status.code() == Some(0) && stdout.trim_end() == "2*u_2 - u_0",
        || format!("eval printed `{stdout}`"),
    )?;
    for bad in ["u_1 *", "[x|", "(u_1"] {
        let out = Command::new(bin)
            .args(["eval", "-e", bad])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(2), || {
            format!("`{bad}` exited with {:?}", out.status.code())
        })?;
    }
    let out = Command::new(bin)
        .args(["verify", "--suite", "product"])
        .env_remove("MRB_SEED")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || {
        String::from_utf8_lossy(&out.stdout).into_owned()
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("golden product table", golden_table),
        ("closed form, 49 cases", closed_form),
        ("worked injection pair", worked_pair),
        ("five-term stuffle example", five_terms),
        ("recursive and stuffle engines agree", engines),
        ("associativity and commutativity", ring),
        ("operator identity for P_A and id(x)P_A", operator_identity),
        ("coproduct and counit of u_n", hopf_golden),
        ("bialgebra axioms", bialgebra),
        ("antipode", antipode),
        ("filtration", filtration),
        ("operator toolbox", operator_suite),
        ("injection pair counts", counting),
        ("command line", cli),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
