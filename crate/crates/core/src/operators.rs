//! Operator toolbox on pluggable carriers.
//!
//! An operator is a linear endomorphism fixed by its values on basis
//! elements: a finite table plus a default rule for everything else (needed
//! for infinite bases such as `ε^k`). Identities are checked by sampling
//! seeded random pairs; failures carry the offending pair.
//!
//! The same [`OperatorInstance`] type holds Rota-Baxter operators (weight `λ`
//! in `P(x)P(y) = P(P(x)y) + P(xP(y)) + λP(xy)`) and modified Rota-Baxter
//! operators (weight `κ` in `P(u)P(v) = P(uP(v)) + P(P(u)v) + κuv`); which
//! identity applies is decided by the caller.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, BaseAlgebra, FreeMrbAlgebra};
use crate::base::{BaseInstance, Monomial};
use crate::error::{Error, Result};
use crate::product::{operator_p, MrbContext};
use crate::random::rng;
use crate::rational::Rational;

pub type BasisRule<C> = Arc<dyn Fn(&<C as Algebra>::Basis) -> <C as Algebra>::Elem + Send + Sync>;

/// A table-driven linear operator.
pub struct LinearOperator<C: Algebra> {
    label: String,
    table: BTreeMap<C::Basis, C::Elem>,
    default: BasisRule<C>,
}

impl<C: Algebra> Clone for LinearOperator<C> {
    fn clone(&self) -> Self {
        LinearOperator {
            label: self.label.clone(),
            table: self.table.clone(),
            default: Arc::clone(&self.default),
        }
    }
}

impl<C: Algebra> fmt::Debug for LinearOperator<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearOperator")
            .field("label", &self.label)
            .field("table", &self.table)
            .finish_non_exhaustive()
    }
}

impl<C: Algebra> LinearOperator<C> {
    pub fn from_rule(
        label: impl Into<String>,
        rule: impl Fn(&C::Basis) -> C::Elem + Send + Sync + 'static,
    ) -> Self {
        LinearOperator {
            label: label.into(),
            table: BTreeMap::new(),
            default: Arc::new(rule),
        }
    }

    pub fn with_table(mut self, table: impl IntoIterator<Item = (C::Basis, C::Elem)>) -> Self {
        self.table.extend(table);
        self
    }

    pub fn identity(carrier: &C) -> Self {
        let c = carrier.clone();
        Self::from_rule("id", move |b| c.basis_element(b))
    }

    /// `c · id`.
    pub fn scalar(carrier: &C, coeff: Rational) -> Self {
        let c = carrier.clone();
        let label = format!("{coeff}*id");
        Self::from_rule(label, move |b| c.scale(&coeff, &c.basis_element(b)))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn image(&self, b: &C::Basis) -> C::Elem {
        match self.table.get(b) {
            Some(img) => img.clone(),
            None => (self.default)(b),
        }
    }

    pub fn apply(&self, carrier: &C, x: &C::Elem) -> C::Elem {
        let mut acc = carrier.zero();
        for (b, c) in carrier.decompose(x) {
            acc = carrier.add(&acc, &carrier.scale(&c, &self.image(&b)));
        }
        acc
    }

    /// `Σ cᵢ·opᵢ`.
    pub fn combine(
        carrier: &C,
        label: impl Into<String>,
        parts: Vec<(Rational, LinearOperator<C>)>,
    ) -> Self {
        let c = carrier.clone();
        Self::from_rule(label, move |b| {
            let mut acc = c.zero();
            for (coeff, op) in &parts {
                acc = c.add(&acc, &c.scale(coeff, &op.image(b)));
            }
            acc
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, carrier: &C, other: &LinearOperator<C>) -> Self {
        let (c, outer, inner) = (carrier.clone(), self.clone(), other.clone());
        let label = format!("{}∘{}", self.label, other.label);
        Self::from_rule(label, move |b| outer.apply(&c, &inner.image(b)))
    }
}

/// An operator on a carrier together with its weight.
pub struct OperatorInstance<C: Algebra> {
    carrier: C,
    op: LinearOperator<C>,
    weight: Rational,
}

impl<C: Algebra> Clone for OperatorInstance<C> {
    fn clone(&self) -> Self {
        OperatorInstance {
            carrier: self.carrier.clone(),
            op: self.op.clone(),
            weight: self.weight.clone(),
        }
    }
}

impl<C: Algebra> fmt::Debug for OperatorInstance<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OperatorInstance")
            .field("carrier", &self.carrier.name())
            .field("op", &self.op.label)
            .field("weight", &self.weight)
            .finish()
    }
}

/// Modified Rota-Baxter operator instance.
pub type MrbOperatorInstance<C> = OperatorInstance<C>;

impl<C: Algebra> OperatorInstance<C> {
    pub fn new(carrier: C, op: LinearOperator<C>, weight: Rational) -> Self {
        OperatorInstance {
            carrier,
            op,
            weight,
        }
    }

    pub fn carrier(&self) -> &C {
        &self.carrier
    }

    pub fn op(&self) -> &LinearOperator<C> {
        &self.op
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    pub fn label(&self) -> &str {
        &self.op.label
    }

    pub fn apply(&self, x: &C::Elem) -> C::Elem {
        self.op.apply(&self.carrier, x)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub u: String,
    pub v: String,
    pub defect: String,
}

/// Outcome of a sampled identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub identity: &'static str,
    pub operator: String,
    pub carrier: String,
    pub weight: Rational,
    pub samples: usize,
    pub failures: Vec<Counterexample>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&Counterexample> {
        self.failures.first()
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} identity, operator {} on {}, weight {}: {} samples, {} failures",
            self.identity,
            self.operator,
            self.carrier,
            self.weight,
            self.samples,
            self.failures.len()
        )?;
        if let Some(w) = self.first_failure() {
            write!(
                f,
                "; first witness u = {}, v = {}, defect = {}",
                w.u, w.v, w.defect
            )?;
        }
        Ok(())
    }
}

/// `(1, 1)` first, then alternating basis pairs and random elements.
fn sample_pairs<C: Algebra>(carrier: &C, samples: usize, seed: u64) -> Vec<(C::Elem, C::Elem)> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(samples);
    for i in 0..samples {
        let pair = match i {
            0 => (carrier.one(), carrier.one()),
            _ if i % 2 == 1 => (
                carrier.basis_element(&carrier.random_basis(&mut r)),
                carrier.basis_element(&carrier.random_basis(&mut r)),
            ),
            _ => (
                carrier.random_element(&mut r),
                carrier.random_element(&mut r),
            ),
        };
        out.push(pair);
    }
    out
}

fn run_check<C: Algebra>(
    identity: &'static str,
    inst: &OperatorInstance<C>,
    samples: usize,
    seed: u64,
    defect: impl Fn(&C::Elem, &C::Elem) -> C::Elem,
) -> IdentityReport {
    let carrier = &inst.carrier;
    let failures = sample_pairs(carrier, samples, seed)
        .into_iter()
        .filter_map(|(u, v)| {
            let d = defect(&u, &v);
            (!carrier.is_zero(&d)).then(|| Counterexample {
                u: u.to_string(),
                v: v.to_string(),
                defect: d.to_string(),
            })
        })
        .collect();
    IdentityReport {
        identity,
        operator: inst.op.label.clone(),
        carrier: carrier.name(),
        weight: inst.weight.clone(),
        samples,
        failures,
    }
}

/// Evaluates `P(u)P(v) − P(uP(v)) − P(P(u)v) − κuv` on sampled pairs.
pub fn check_mrb<C: Algebra>(
    inst: &OperatorInstance<C>,
    samples: usize,
    seed: u64,
) -> IdentityReport {
    let c = &inst.carrier;
    run_check("modified Rota-Baxter", inst, samples, seed, |u, v| {
        let (pu, pv) = (inst.apply(u), inst.apply(v));
        let lhs = c.mul(&pu, &pv);
        let t1 = inst.apply(&c.mul(u, &pv));
        let t2 = inst.apply(&c.mul(&pu, v));
        let t3 = c.scale(&inst.weight, &c.mul(u, v));
        c.sub(&c.sub(&c.sub(&lhs, &t1), &t2), &t3)
    })
}

/// Evaluates `P(x)P(y) − P(P(x)y) − P(xP(y)) − λP(xy)` on sampled pairs.
pub fn check_rb<C: Algebra>(
    inst: &OperatorInstance<C>,
    samples: usize,
    seed: u64,
) -> IdentityReport {
    let c = &inst.carrier;
    run_check("Rota-Baxter", inst, samples, seed, |x, y| {
        let (px, py) = (inst.apply(x), inst.apply(y));
        let lhs = c.mul(&px, &py);
        let t1 = inst.apply(&c.mul(&px, y));
        let t2 = inst.apply(&c.mul(x, &py));
        let t3 = c.scale(&inst.weight, &inst.apply(&c.mul(x, y)));
        c.sub(&c.sub(&c.sub(&lhs, &t1), &t2), &t3)
    })
}

/// `−P`, same weight.
pub fn negate<C: Algebra>(inst: &OperatorInstance<C>) -> OperatorInstance<C> {
    let op = LinearOperator::combine(
        &inst.carrier,
        format!("-({})", inst.op.label),
        vec![(Rational::from(-1), inst.op.clone())],
    );
    OperatorInstance::new(inst.carrier.clone(), op, inst.weight.clone())
}

/// `Q = −λ·id − 2P` of weight `−λ²` from a Rota-Baxter operator `P` of
/// weight `λ`. The input is checked on the sample budget first.
pub fn rb_to_mrb<C: Algebra>(
    rb: &OperatorInstance<C>,
    samples: usize,
    seed: u64,
) -> Result<OperatorInstance<C>> {
    let report = check_rb(rb, samples, seed);
    if let Some(w) = report.first_failure() {
        return Err(Error::IdentityFailure {
            identity: "Rota-Baxter".into(),
            witness: format!("u = {}, v = {}, defect = {}", w.u, w.v, w.defect),
        });
    }
    let lambda = &rb.weight;
    let op = LinearOperator::combine(
        &rb.carrier,
        format!("{}*id - 2*({})", -lambda, rb.op.label),
        vec![
            (-lambda, LinearOperator::identity(&rb.carrier)),
            (Rational::from(-2), rb.op.clone()),
        ],
    );
    Ok(OperatorInstance::new(
        rb.carrier.clone(),
        op,
        -(lambda * lambda),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScaleDirection {
    /// weight 1 ↦ `κP` of weight `κ²`
    Up,
    /// weight `κ²` ↦ `κ⁻¹P` of weight 1
    Down,
}

pub fn scale_weight<C: Algebra>(
    inst: &OperatorInstance<C>,
    kappa: &Rational,
    direction: ScaleDirection,
) -> Result<OperatorInstance<C>> {
    let square = kappa * kappa;
    let (factor, weight) = match direction {
        ScaleDirection::Up => {
            if !inst.weight.is_one() {
                return Err(Error::InvalidScaling(format!(
                    "scaling up needs weight 1, operator has weight {}",
                    inst.weight
                )));
            }
            (kappa.clone(), square)
        }
        ScaleDirection::Down => {
            let inv = kappa
                .recip()
                .ok_or_else(|| Error::InvalidScaling("cannot scale down by 0".into()))?;
            if inst.weight != square {
                return Err(Error::InvalidScaling(format!(
                    "scaling down by {kappa} needs weight {square}, operator has weight {}",
                    inst.weight
                )));
            }
            (inv, Rational::one())
        }
    };
    let op = LinearOperator::combine(
        &inst.carrier,
        format!("{factor}*({})", inst.op.label),
        vec![(factor, inst.op.clone())],
    );
    Ok(OperatorInstance::new(inst.carrier.clone(), op, weight))
}

/// A decomposition `R = R₁ ⊕ R₂` given by complementary projections.
pub struct Splitting<C: Algebra> {
    carrier: C,
    proj1: LinearOperator<C>,
    proj2: LinearOperator<C>,
}

impl<C: Algebra> Clone for Splitting<C> {
    fn clone(&self) -> Self {
        Splitting {
            carrier: self.carrier.clone(),
            proj1: self.proj1.clone(),
            proj2: self.proj2.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplittingReport {
    pub samples: usize,
    pub failures: Vec<String>,
}

impl SplittingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl<C: Algebra> Splitting<C> {
    pub fn new(carrier: C, proj1: LinearOperator<C>, proj2: LinearOperator<C>) -> Self {
        Splitting {
            carrier,
            proj1,
            proj2,
        }
    }

    pub fn carrier(&self) -> &C {
        &self.carrier
    }

    pub fn proj1(&self) -> &LinearOperator<C> {
        &self.proj1
    }

    pub fn proj2(&self) -> &LinearOperator<C> {
        &self.proj2
    }

    /// Samples `proj1 + proj2 = id`, `proj1∘proj2 = proj2∘proj1 = 0`,
    /// idempotence, and closure of both images under multiplication.
    pub fn validate(&self, samples: usize, seed: u64) -> SplittingReport {
        let c = &self.carrier;
        let (p1, p2) = (&self.proj1, &self.proj2);
        let mut failures = Vec::new();
        for (u, v) in sample_pairs(c, samples, seed) {
            let (u1, u2) = (p1.apply(c, &u), p2.apply(c, &u));
            if c.add(&u1, &u2) != u {
                failures.push(format!("proj1 + proj2 != id on {u}"));
            }
            if !c.is_zero(&p1.apply(c, &u2)) || !c.is_zero(&p2.apply(c, &u1)) {
                failures.push(format!("projections not complementary on {u}"));
            }
            if p1.apply(c, &u1) != u1 || p2.apply(c, &u2) != u2 {
                failures.push(format!("projection not idempotent on {u}"));
            }
            let (v1, v2) = (p1.apply(c, &v), p2.apply(c, &v));
            let prod1 = c.mul(&u1, &v1);
            if p1.apply(c, &prod1) != prod1 {
                failures.push(format!("R1 not closed: ({u1})({v1}) = {prod1}"));
            }
            let prod2 = c.mul(&u2, &v2);
            if p2.apply(c, &prod2) != prod2 {
                failures.push(format!("R2 not closed: ({u2})({v2}) = {prod2}"));
            }
        }
        SplittingReport { samples, failures }
    }
}

/// `P = proj1 − proj2`, an involutive operator of weight −1.
pub fn splitting_to_operator<C: Algebra>(s: &Splitting<C>) -> OperatorInstance<C> {
    let op = LinearOperator::combine(
        &s.carrier,
        format!("({}) - ({})", s.proj1.label, s.proj2.label),
        vec![
            (Rational::one(), s.proj1.clone()),
            (Rational::from(-1), s.proj2.clone()),
        ],
    );
    OperatorInstance::new(s.carrier.clone(), op, Rational::from(-1))
}

/// Recovers `R₁ = (id+P)(R)`, `R₂ = (id−P)(R)` from an involutive operator
/// of weight −1, checking involution, the identity and subalgebra closure on
/// the sample budget.
pub fn operator_to_splitting<C: Algebra>(
    inst: &OperatorInstance<C>,
    samples: usize,
    seed: u64,
) -> Result<Splitting<C>> {
    let c = &inst.carrier;
    let minus_one = Rational::from(-1);
    if inst.weight != minus_one {
        return Err(Error::WeightMismatch {
            context: minus_one.to_string(),
            target: inst.weight.to_string(),
        });
    }
    let mut r = rng(seed);
    for _ in 0..samples {
        let b = c.random_basis(&mut r);
        let x = c.basis_element(&b);
        let back = inst.apply(&inst.apply(&x));
        if back != x {
            return Err(Error::NotInvolutive(format!("P(P({x})) = {back}")));
        }
    }
    let report = check_mrb(inst, samples, seed);
    if let Some(w) = report.first_failure() {
        return Err(Error::IdentityFailure {
            identity: "modified Rota-Baxter".into(),
            witness: format!("u = {}, v = {}, defect = {}", w.u, w.v, w.defect),
        });
    }
    let half = Rational::new(1, 2);
    let id = LinearOperator::identity(c);
    let proj1 = LinearOperator::combine(
        c,
        format!("(id + {})/2", inst.op.label),
        vec![(half.clone(), id.clone()), (half.clone(), inst.op.clone())],
    );
    let proj2 = LinearOperator::combine(
        c,
        format!("(id - {})/2", inst.op.label),
        vec![(half.clone(), id), (-&half, inst.op.clone())],
    );
    let split = Splitting::new(c.clone(), proj1, proj2);
    let report = split.validate(samples, seed);
    if let Some(first) = report.failures.first() {
        return Err(Error::IdentityFailure {
            identity: "subalgebra splitting".into(),
            witness: first.clone(),
        });
    }
    Ok(split)
}

fn laurent_exponent(b: &Monomial) -> i32 {
    b.exponents().next().map_or(0, |(_, e)| e)
}

/// `ε^k ↦ ε^k` for `k ≥ 0`, `0` otherwise: projection onto `k[ε]`.
pub fn laurent_regular_projection(carrier: &BaseAlgebra) -> LinearOperator<BaseAlgebra> {
    let c = carrier.clone();
    LinearOperator::from_rule("regular-part", move |b| {
        if laurent_exponent(b) >= 0 {
            c.basis_element(b)
        } else {
            c.zero()
        }
    })
}

/// `ε^k ↦ ε^k` for `k < 0`, `0` otherwise: projection onto `ε⁻¹k[ε⁻¹]`.
pub fn laurent_pole_projection(carrier: &BaseAlgebra) -> LinearOperator<BaseAlgebra> {
    let c = carrier.clone();
    LinearOperator::from_rule("pole-part", move |b| {
        if laurent_exponent(b) < 0 {
            c.basis_element(b)
        } else {
            c.zero()
        }
    })
}

/// `k[ε, ε⁻¹] = k[ε] ⊕ ε⁻¹k[ε⁻¹]`.
pub fn laurent_splitting(carrier: &BaseAlgebra) -> Splitting<BaseAlgebra> {
    Splitting::new(
        carrier.clone(),
        laurent_regular_projection(carrier),
        laurent_pole_projection(carrier),
    )
}

/// The splitting operator `f₊ + f₋ ↦ f₊ − f₋` of weight −1.
pub fn laurent_split(carrier: &BaseAlgebra) -> OperatorInstance<BaseAlgebra> {
    let c = carrier.clone();
    let op = LinearOperator::from_rule("split", move |b| {
        let e = c.basis_element(b);
        if laurent_exponent(b) >= 0 {
            e
        } else {
            c.scale(&Rational::from(-1), &e)
        }
    });
    OperatorInstance::new(carrier.clone(), op, Rational::from(-1))
}

/// The pole-part projection as a Rota-Baxter operator of weight −1.
pub fn laurent_pole_rb(carrier: &BaseAlgebra) -> OperatorInstance<BaseAlgebra> {
    OperatorInstance::new(
        carrier.clone(),
        laurent_pole_projection(carrier),
        Rational::from(-1),
    )
}

/// `Q_λ = λ·id`, a modified Rota-Baxter operator of weight `−λ²`.
pub fn scalar_mrb<C: Algebra>(carrier: &C, lambda: &Rational) -> OperatorInstance<C> {
    OperatorInstance::new(
        carrier.clone(),
        LinearOperator::scalar(carrier, lambda.clone()),
        -(lambda * lambda),
    )
}

/// `P_λ = −λ·id`, a Rota-Baxter operator of weight `λ`.
pub fn scalar_rb<C: Algebra>(carrier: &C, lambda: &Rational) -> OperatorInstance<C> {
    OperatorInstance::new(
        carrier.clone(),
        LinearOperator::scalar(carrier, -lambda),
        lambda.clone(),
    )
}

/// `P(𝔞) = 1 ⊗ 𝔞` on the free algebra, of the context's weight.
pub fn free_operator(ctx: &MrbContext) -> OperatorInstance<FreeMrbAlgebra> {
    let carrier = FreeMrbAlgebra::new(ctx.clone());
    let c = carrier.clone();
    let op = LinearOperator::from_rule("P_A", move |w| operator_p(&c.basis_element(w)));
    OperatorInstance::new(carrier, op, ctx.kappa().clone())
}

/// Named default rules for table-driven operators on a base carrier.
pub fn named_rule(name: &str, carrier: &BaseAlgebra) -> Result<LinearOperator<BaseAlgebra>> {
    let c = carrier.clone();
    let op = match name {
        "identity" => LinearOperator::identity(carrier),
        "zero" => LinearOperator::from_rule("zero", move |_| c.zero()),
        "negate" => LinearOperator::scalar(carrier, Rational::from(-1)),
        "identity-on-nonneg" | "regular-part" => laurent_regular_projection(carrier),
        "pole-part" => laurent_pole_projection(carrier),
        "split" => laurent_split(carrier).op,
        other => {
            return Err(Error::Parse(format!(
                "unknown default rule `{other}` (expected identity, zero, negate, \
                 identity-on-nonneg, pole-part or split)"
            )))
        }
    };
    Ok(op)
}

/// A Laurent carrier with generator `e`.
pub fn laurent_carrier() -> BaseAlgebra {
    BaseAlgebra::new(BaseInstance::laurent("e"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial_carrier() -> BaseAlgebra {
        BaseAlgebra::new(BaseInstance::Trivial)
    }

    #[test]
    fn scalar_operator_is_mrb() {
        for lambda in [Rational::from(3), Rational::new(-2, 5), Rational::zero()] {
            let inst = scalar_mrb(&laurent_carrier(), &lambda);
            assert!(check_mrb(&inst, 50, 1).passed());
        }
    }

    #[test]
    fn identity_with_weight_minus_one_passes() {
        let carrier = BaseAlgebra::new(BaseInstance::polynomial(["x", "y"]));
        let inst = OperatorInstance::new(
            carrier.clone(),
            LinearOperator::identity(&carrier),
            Rational::from(-1),
        );
        assert!(check_mrb(&inst, 50, 3).passed());
    }

    #[test]
    fn identity_with_weight_zero_fails_at_one_one() {
        let carrier = trivial_carrier();
        let inst = OperatorInstance::new(
            carrier.clone(),
            LinearOperator::identity(&carrier),
            Rational::zero(),
        );
        let report = check_mrb(&inst, 10, 0);
        assert!(!report.passed());
        let w = report.first_failure().unwrap();
        assert_eq!((w.u.as_str(), w.v.as_str()), ("1", "1"));
        assert_eq!(w.defect, "-1");
    }

    #[test]
    fn negation_preserves_identity() {
        let split = laurent_split(&laurent_carrier());
        let neg = negate(&split);
        assert!(check_mrb(&neg, 100, 5).passed());
        let back = negate(&neg);
        let carrier = laurent_carrier();
        for k in -3..=3 {
            let e = carrier.power(k);
            assert_eq!(back.apply(&e), split.apply(&e));
        }
    }

    #[test]
    fn rb_scalar_converts_to_mrb_scalar() {
        let carrier = laurent_carrier();
        let lambda = Rational::new(3, 2);
        let rb = scalar_rb(&carrier, &lambda);
        assert!(check_rb(&rb, 50, 1).passed());
        let q = rb_to_mrb(&rb, 50, 1).unwrap();
        assert_eq!(q.weight(), &-(&lambda * &lambda));
        for k in -3..=3 {
            let e = carrier.power(k);
            assert_eq!(q.apply(&e), e.scale(&lambda));
        }
    }

    #[test]
    fn rb_to_mrb_rejects_non_rb_input() {
        let carrier = laurent_carrier();
        let bogus = OperatorInstance::new(
            carrier.clone(),
            LinearOperator::identity(&carrier),
            Rational::from(5),
        );
        assert!(matches!(
            rb_to_mrb(&bogus, 20, 0),
            Err(Error::IdentityFailure { .. })
        ));
    }

    #[test]
    fn pole_projection_gives_split_operator() {
        let carrier = laurent_carrier();
        let rb = laurent_pole_rb(&carrier);
        let q = rb_to_mrb(&rb, 100, 2).unwrap();
        let split = laurent_split(&carrier);
        assert_eq!(q.weight(), split.weight());
        for k in -3..=3 {
            let e = carrier.power(k);
            assert_eq!(q.apply(&e), split.apply(&e), "k = {k}");
        }
    }

    #[test]
    fn weight_zero_rb_is_weight_zero_mrb_after_scaling() {
        // P = 0 is RB of weight 0; Q = -2P = 0 is MRB of weight 0.
        let carrier = laurent_carrier();
        let zero = OperatorInstance::new(
            carrier.clone(),
            named_rule("zero", &carrier).unwrap(),
            Rational::zero(),
        );
        let q = rb_to_mrb(&zero, 20, 0).unwrap();
        assert!(q.weight().is_zero());
        assert!(check_mrb(&q, 20, 0).passed());
    }

    #[test]
    fn split_example_values() {
        let carrier = laurent_carrier();
        let split = laurent_split(&carrier);
        let x = carrier.power(1).add(&carrier.power(-1)).unwrap();
        let expected = carrier.power(1).sub(&carrier.power(-1)).unwrap();
        assert_eq!(split.apply(&x), expected);
        for k in -3..=3 {
            let e = carrier.power(k);
            assert_eq!(split.apply(&split.apply(&e)), e);
        }
        assert!(check_mrb(&split, 100, 7).passed());
    }

    #[test]
    fn splitting_round_trip() {
        let carrier = laurent_carrier();
        let s = laurent_splitting(&carrier);
        assert!(s.validate(50, 1).passed());
        let op = splitting_to_operator(&s);
        let back = operator_to_splitting(&op, 50, 1).unwrap();
        for k in -3..=3 {
            let e = carrier.power(k);
            assert_eq!(
                back.proj1().apply(&carrier, &e),
                s.proj1().apply(&carrier, &e)
            );
            assert_eq!(
                back.proj2().apply(&carrier, &e),
                s.proj2().apply(&carrier, &e)
            );
        }
    }

    #[test]
    fn non_involutive_operator_rejected() {
        let carrier = laurent_carrier();
        let inst = scalar_mrb(&carrier, &Rational::from(2));
        let inst = OperatorInstance::new(carrier, inst.op().clone(), Rational::from(-1));
        assert!(matches!(
            operator_to_splitting(&inst, 10, 0),
            Err(Error::NotInvolutive(_))
        ));
    }

    #[test]
    fn weight_scaling_on_free_algebra() {
        let ctx = MrbContext::new(BaseInstance::Trivial, Rational::one());
        let p = free_operator(&ctx);
        assert!(check_mrb(&p, 30, 4).passed());
        let three = Rational::from(3);
        let up = scale_weight(&p, &three, ScaleDirection::Up).unwrap();
        assert_eq!(up.weight(), &Rational::from(9));
        assert!(check_mrb(&up, 30, 4).passed());
        let down = scale_weight(&up, &three, ScaleDirection::Down).unwrap();
        assert_eq!(down.weight(), &Rational::one());
        for n in 0..4 {
            let u = crate::tensor::MrbElement::u(n);
            assert_eq!(down.apply(&u), p.apply(&u));
        }
        let same = scale_weight(&p, &Rational::one(), ScaleDirection::Up).unwrap();
        assert_eq!(
            same.apply(&crate::tensor::MrbElement::u(2)),
            p.apply(&crate::tensor::MrbElement::u(2))
        );
        assert!(matches!(
            scale_weight(&up, &Rational::zero(), ScaleDirection::Down),
            Err(Error::InvalidScaling(_))
        ));
        assert!(matches!(
            scale_weight(&up, &three, ScaleDirection::Up),
            Err(Error::InvalidScaling(_))
        ));
    }

    #[test]
    fn table_overrides_default() {
        let carrier = laurent_carrier();
        let op = named_rule("identity-on-nonneg", &carrier)
            .unwrap()
            .with_table([(
                Monomial::from_exponents([("e", -1)]),
                carrier.power(-1).scale(&Rational::from(-1)),
            )]);
        assert_eq!(
            op.image(&Monomial::from_exponents([("e", -1)])),
            carrier.power(-1).scale(&Rational::from(-1))
        );
        assert!(op.image(&Monomial::from_exponents([("e", -2)])).is_zero());
        assert_eq!(op.image(&Monomial::var("e")), carrier.power(1));
        assert!(named_rule("bogus", &carrier).is_err());
    }
}
