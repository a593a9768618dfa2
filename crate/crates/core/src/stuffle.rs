//! The explicit modified stuffle product.
//!
//! For words `𝔞 = a₀⊗⋯⊗a_m`, `𝔟 = b₀⊗⋯⊗b_n` with `m, n ≥ 1` the product
//! is a sum over pairs of order-preserving injections `φ: [m] → [m+n−r]`,
//! `ψ: [n] → [m+n−r]` whose images cover the target and overlap in `r`
//! points. Each pair contributes `κ^r` times one word of length
//! `m+n−2r+1`, obtained by deflating the overlap out of `φ` and `ψ`.

use std::fmt::{self, Write as _};

use itertools::Itertools;

use crate::base::Monomial;
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::product::MrbContext;
use crate::rational::{binomial, Rational};
use crate::tensor::{MrbElement, TensorWord};

/// `(φ, ψ) ∈ 𝔍_{m,n,r}`, stored 1-based as in `φ(k)` for `k ∈ [m]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InjectionPair {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub phi: Vec<usize>,
    pub psi: Vec<usize>,
}

impl InjectionPair {
    /// Validates order preservation, range and covering.
    pub fn new(m: usize, n: usize, r: usize, phi: Vec<usize>, psi: Vec<usize>) -> Result<Self> {
        check_range(m, n, r)?;
        let top = m + n - r;
        let ok_map = |f: &[usize], len: usize| {
            f.len() == len
                && f.iter().all(|&x| (1..=top).contains(&x))
                && f.windows(2).all(|w| w[0] < w[1])
        };
        if !ok_map(&phi, m) || !ok_map(&psi, n) {
            return Err(Error::MalformedWord(format!(
                "phi = {phi:?}, psi = {psi:?} are not order-preserving injections into [{top}]"
            )));
        }
        let mut covered = vec![false; top + 1];
        for &x in phi.iter().chain(&psi) {
            covered[x] = true;
        }
        if covered[1..].iter().any(|c| !c) {
            return Err(Error::MalformedWord(format!(
                "images of phi = {phi:?} and psi = {psi:?} do not cover [{top}]"
            )));
        }
        Ok(InjectionPair { m, n, r, phi, psi })
    }

    /// `m + n − r`, the size of the common target.
    pub fn target_len(&self) -> usize {
        self.m + self.n - self.r
    }

    /// `m + n − 2r`, the tail length of the product word.
    pub fn output_tail_len(&self) -> usize {
        self.m + self.n - 2 * self.r
    }
}

fn check_range(m: usize, n: usize, r: usize) -> Result<()> {
    if m == 0 || n == 0 || r > m.min(n) {
        return Err(Error::OverlapOutOfRange { m, n, r });
    }
    Ok(())
}

/// All of `𝔍_{m,n,r}`, ordered lexicographically by `(im φ, im ψ)`.
///
/// `im φ` ranges over `m`-subsets of `[m+n−r]`; `im ψ` is the complement
/// together with `r` points of `im φ`. Order preservation then fixes the maps.
pub fn enumerate_j(m: usize, n: usize, r: usize) -> Result<Vec<InjectionPair>> {
    check_range(m, n, r)?;
    let top = m + n - r;
    let mut out = Vec::new();
    for phi in (1..=top).combinations(m) {
        let complement: Vec<usize> = (1..=top).filter(|x| !phi.contains(x)).collect();
        for overlap in phi.iter().copied().combinations(r) {
            let psi: Vec<usize> = complement.iter().copied().chain(overlap).sorted().collect();
            out.push(InjectionPair {
                m,
                n,
                r,
                phi: phi.clone(),
                psi,
            });
        }
    }
    out.sort();
    Ok(out)
}

/// `|𝔍_{m,n,r}| = C(m+n−r, m)·C(m, r)`.
pub fn count_j(m: usize, n: usize, r: usize) -> Result<Rational> {
    check_range(m, n, r)?;
    Ok(binomial(m + n - r, m) * binomial(m, r))
}

/// Overlapping degrees and the deflated maps `φ̃`, `ψ̃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeflationTables {
    pub d_phi: Vec<usize>,
    pub d_psi: Vec<usize>,
    pub phi_tilde: Vec<usize>,
    pub psi_tilde: Vec<usize>,
}

/// `d_{φ,k} = |φ([k]) ∩ im ψ|`, `φ̃(k) = φ(k) − d_{φ,k}`, and symmetrically.
pub fn deflate(p: &InjectionPair) -> DeflationTables {
    fn side(f: &[usize], other: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut d = Vec::with_capacity(f.len());
        let mut count = 0;
        for &x in f {
            if other.binary_search(&x).is_ok() {
                count += 1;
            }
            d.push(count);
        }
        let tilde = f.iter().zip(&d).map(|(x, d)| x - d).collect();
        (d, tilde)
    }
    let (d_phi, phi_tilde) = side(&p.phi, &p.psi);
    let (d_psi, psi_tilde) = side(&p.psi, &p.phi);
    DeflationTables {
        d_phi,
        d_psi,
        phi_tilde,
        psi_tilde,
    }
}

/// `𝔞 ⋄_(φ,ψ) 𝔟 = a₀b₀c₀ ⊗ c₁ ⊗ ⋯ ⊗ c_{m+n−2r}` where `c_s` multiplies the
/// `a_i` with `φ̃(i) = s` and the `b_j` with `ψ̃(j) = s`.
pub fn stuffle_pair_product(
    a: &TensorWord,
    b: &TensorWord,
    p: &InjectionPair,
) -> Result<TensorWord> {
    if a.tail_len() != p.m || b.tail_len() != p.n {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
            m: p.m,
            n: p.n,
        });
    }
    let t = deflate(p);
    let mut slots = vec![Monomial::one(); p.output_tail_len() + 1];
    slots[0] = a.head().mul(b.head());
    let (sa, sb) = (a.slots(), b.slots());
    for (i, &s) in t.phi_tilde.iter().enumerate() {
        slots[s] = slots[s].mul(&sa[i + 1]);
    }
    for (j, &s) in t.psi_tilde.iter().enumerate() {
        slots[s] = slots[s].mul(&sb[j + 1]);
    }
    TensorWord::new(slots)
}

/// `𝔞 ⋄̄ 𝔟` on pure words.
pub fn stuffle_words(a: &TensorWord, b: &TensorWord, kappa: &Rational) -> LinComb<TensorWord> {
    let (m, n) = (a.tail_len(), b.tail_len());
    if m == 0 {
        return LinComb::basis(b.mul_head(a.head()));
    }
    if n == 0 {
        return LinComb::basis(a.mul_head(b.head()));
    }
    let mut out = LinComb::zero();
    let mut weight = Rational::one();
    for r in 0..=m.min(n) {
        if weight.is_zero() {
            break;
        }
        for p in enumerate_j(m, n, r).expect("r within range") {
            let w = stuffle_pair_product(a, b, &p).expect("lengths match by construction");
            out.add_term(weight.clone(), w);
        }
        weight = &weight * kappa;
    }
    out
}

/// `a ⋄̄ b`, extended bilinearly.
pub fn stuffle_product(ctx: &MrbContext, a: &MrbElement, b: &MrbElement) -> Result<MrbElement> {
    ctx.ensure_element(a)?;
    ctx.ensure_element(b)?;
    let terms = a
        .terms()
        .bilinear(b.terms(), |x, y| stuffle_words(x, y, ctx.kappa()));
    Ok(MrbElement::from_lincomb(ctx.instance(), terms))
}

/// `u_m ⋄ u_n = Σ_r C(m+n−r, m)·C(m, r)·κ^r·u_{m+n−2r}`.
pub fn closed_form_trivial(m: usize, n: usize, kappa: &Rational) -> MrbElement {
    let mut terms = LinComb::zero();
    let mut weight = Rational::one();
    for r in 0..=m.min(n) {
        let c = binomial(m + n - r, m) * binomial(m, r) * weight.clone();
        terms.add_term(c, TensorWord::u(m + n - 2 * r));
        weight = &weight * kappa;
    }
    MrbElement::from_lincomb(&crate::base::BaseInstance::Trivial, terms)
}

/// Which product implementation to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Engine {
    Recursive,
    Stuffle,
    CrossCheck,
    /// Recursive up to word length 6, stuffle beyond.
    #[default]
    Auto,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Recursive => "recursive",
            Engine::Stuffle => "stuffle",
            Engine::CrossCheck => "cross-check",
            Engine::Auto => "auto",
        })
    }
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recursive" => Ok(Engine::Recursive),
            "stuffle" => Ok(Engine::Stuffle),
            "cross-check" => Ok(Engine::CrossCheck),
            "auto" => Ok(Engine::Auto),
            other => Err(Error::Parse(format!(
                "unknown engine `{other}` (expected recursive, stuffle, cross-check or auto)"
            ))),
        }
    }
}

const AUTO_STUFFLE_LEN: usize = 6;

/// The product under the chosen engine. Cross-check computes both and
/// reports the difference on disagreement.
pub fn multiply(
    ctx: &MrbContext,
    a: &MrbElement,
    b: &MrbElement,
    engine: Engine,
) -> Result<MrbElement> {
    match engine {
        Engine::Recursive => ctx.diamond(a, b),
        Engine::Stuffle => stuffle_product(ctx, a, b),
        Engine::Auto => {
            let longest = a
                .terms()
                .keys()
                .chain(b.terms().keys())
                .map(TensorWord::len)
                .max()
                .unwrap_or(0);
            if longest > AUTO_STUFFLE_LEN {
                stuffle_product(ctx, a, b)
            } else {
                ctx.diamond(a, b)
            }
        }
        Engine::CrossCheck => {
            let rec = ctx.diamond(a, b)?;
            let stu = stuffle_product(ctx, a, b)?;
            if rec != stu {
                let diff = rec.sub(&stu)?;
                return Err(Error::EngineMismatch(format!(
                    "({a}) * ({b}): recursive - stuffle = {diff}"
                )));
            }
            Ok(rec)
        }
    }
}

/// The pair and its deflation as two row tables.
pub fn render_pair_table(p: &InjectionPair) -> String {
    let t = deflate(p);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "r={}  m+n-r={}  m+n-2r={}",
        p.r,
        p.target_len(),
        p.output_tail_len()
    );
    let row = |out: &mut String, label: &str, vals: &[usize]| {
        let cells = vals.iter().map(|v| format!("{v:>2}")).join(" |");
        let _ = writeln!(out, "{label:<10}|{cells}");
    };
    let ks: Vec<usize> = (1..=p.m).collect();
    row(&mut out, "k", &ks);
    row(&mut out, "phi(k)", &p.phi);
    row(&mut out, "d_phi,k", &t.d_phi);
    row(&mut out, "phi~(k)", &t.phi_tilde);
    let ls: Vec<usize> = (1..=p.n).collect();
    row(&mut out, "l", &ls);
    row(&mut out, "psi(l)", &p.psi);
    row(&mut out, "d_psi,l", &t.d_psi);
    row(&mut out, "psi~(l)", &t.psi_tilde);
    out
}
