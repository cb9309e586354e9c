//! Exact rational tangle calculus.
//!
//! Two-string rational tangles are classified by a single extended rational
//! number, the *tangle fraction* `p/q` (with `1/0` for the vertical
//! two-strand tangle), and their closures are the 2-bridge knots and links
//! `K(p/q)`.  This module provides:
//!
//! - [`Fraction`]: canonical extended rationals (`gcd(p,q) = 1`, `q >= 0`,
//!   infinity stored as `1/0`),
//! - [`ContinuedFraction`]: integer continued fractions with arbitrary signs
//!   and zeros, evaluated projectively so intermediate infinities are exact,
//! - 2-bridge triviality and Schubert equivalence tests,
//! - Montesinos determinants and the reduction of a three-tangle Montesinos
//!   presentation with one integral tangle to a single 2-bridge fraction,
//! - [`LaurentPoly`]: exact single-variable Laurent polynomials with i128
//!   coefficients, used by the diagram invariants.
//!
//! Everything is exact; fallible operations return [`TangleError`] instead of
//! guessing.

use crate::exact::{self, Int};
use std::collections::BTreeMap;
use std::fmt;

/// Errors for precondition violations in tangle arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TangleError {
    /// `0/0` does not denote a tangle.
    #[error("0/0 is not a valid tangle fraction")]
    ZeroOverZero,
    /// An operation that only makes sense for knots received a link fraction
    /// (even numerator) or the vertical tangle.
    #[error("operation requires an odd-numerator (knot) fraction, got {0}")]
    NotAKnotFraction(Fraction),
    /// A Montesinos operation received the wrong number of tangles.
    #[error("operation requires exactly {expected} tangles, got {got}")]
    WrongTangleCount {
        /// Required number of tangles.
        expected: usize,
        /// Number of tangles supplied.
        got: usize,
    },
    /// An empty continued fraction has no value.
    #[error("continued fraction must have at least one term")]
    EmptyContinuedFraction,
}

// ---------------------------------------------------------------------------
// Fractions
// ---------------------------------------------------------------------------

/// An extended rational number `p/q` in canonical form.
///
/// Canonical form means `gcd(p, q) = 1` and `q >= 0`; the infinite fraction
/// is stored as `1/0`.  Values are compared structurally, so canonical form
/// doubles as a normal form for equality.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fraction {
    p: Int,
    q: Int,
}

impl Fraction {
    /// The infinite fraction `1/0` (the vertical two-strand tangle).
    pub const INFINITY: Fraction = Fraction { p: 1, q: 0 };

    /// Builds the canonical fraction `p/q`.  Fails only on `0/0`.
    pub fn new(p: Int, q: Int) -> Result<Fraction, TangleError> {
        if p == 0 && q == 0 {
            return Err(TangleError::ZeroOverZero);
        }
        let g = exact::gcd(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = exact::neg(p);
            q = exact::neg(q);
        }
        Ok(Fraction { p, q })
    }

    /// The integer `n` as a fraction `n/1`.
    pub fn integer(n: Int) -> Fraction {
        Fraction { p: n, q: 1 }
    }

    /// Numerator of the canonical form.
    pub fn numerator(&self) -> Int {
        self.p
    }

    /// Denominator of the canonical form (non-negative).
    pub fn denominator(&self) -> Int {
        self.q
    }

    /// True for integer fractions `n/1`.
    pub fn is_integral(&self) -> bool {
        self.q == 1
    }

    /// True for the infinite fraction `1/0`.
    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }

    /// The fraction `-p/q` (the mirror of the corresponding tangle).
    pub fn negated(&self) -> Fraction {
        Fraction::new(exact::neg(self.p), self.q).expect("negation preserves validity")
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 0 {
            write!(f, "1/0")
        } else if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// Continued fractions
// ---------------------------------------------------------------------------

/// An integer continued fraction `[a1, a2, ..., an]` with value
/// `an + 1/(a(n-1) + 1/(... + 1/a1))`.
///
/// Terms may be zero or negative; evaluation is projective, so intermediate
/// infinities (such as `[0, 0]`, whose value is `1/0`) are handled exactly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ContinuedFraction(pub Vec<Int>);

impl ContinuedFraction {
    /// Evaluates the continued fraction to a canonical [`Fraction`].
    ///
    /// The first term is innermost: starting from the projective pair
    /// `(a1, 1)`, each later term folds `(p, q) -> (a*p + q, p)`.
    pub fn eval(&self) -> Result<Fraction, TangleError> {
        cf_eval(&self.0)
    }
}

/// Evaluates integer continued-fraction terms to a canonical [`Fraction`].
///
/// See [`ContinuedFraction::eval`] for the convention.  Errors on an empty
/// term list; any other list of integers evaluates exactly.
pub fn cf_eval(terms: &[Int]) -> Result<Fraction, TangleError> {
    let (&first, rest) = terms.split_first().ok_or(TangleError::EmptyContinuedFraction)?;
    let (mut p, mut q) = (first, 1);
    for &a in rest {
        (p, q) = (exact::add(exact::mul(a, p), q), p);
    }
    Fraction::new(p, q)
}

// ---------------------------------------------------------------------------
// 2-bridge knots
// ---------------------------------------------------------------------------

/// Outcome of the 2-bridge triviality test.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum TwoBridgeTriviality {
    /// `K(p/q)` is the trivial knot (`|p| = 1`, including `1/0`).
    Trivial,
    /// `K(p/q)` is a nontrivial knot (odd `|p| > 1`).
    Nontrivial,
    /// `K(p/q)` is a 2-component link, not a knot (even `p`).
    NotAKnot,
}

/// Decides whether the 2-bridge closure `K(p/q)` is the trivial knot.
///
/// `K(p/q)` is a knot exactly when `p` is odd (the closure of an
/// even-numerator fraction is a 2-component link, reported separately), and
/// it is trivial exactly when `|p| = 1`.  The vertical tangle `1/0` closes to
/// the trivial knot.
pub fn two_bridge_is_trivial(f: Fraction) -> TwoBridgeTriviality {
    let p = f.numerator();
    if p.rem_euclid(2) == 0 {
        TwoBridgeTriviality::NotAKnot
    } else if p.abs() == 1 {
        TwoBridgeTriviality::Trivial
    } else {
        TwoBridgeTriviality::Nontrivial
    }
}

/// Decides unoriented equivalence of two 2-bridge knots `K(p1/q1)` and
/// `K(p2/q2)` by Schubert's classification.
///
/// Both fractions must have odd numerator (knots, not links); otherwise this
/// returns an error.  The knots agree up to mirror image and strand
/// reversal exactly when `|p1| = |p2|` and `q2 = +/- q1^(+/-1) (mod p)`, with
/// `q` read modulo `p` (so `K(13/5)` and `K(13/18)` are the same knot).
pub fn two_bridge_equal(f1: Fraction, f2: Fraction) -> Result<bool, TangleError> {
    for f in [f1, f2] {
        if f.numerator().rem_euclid(2) == 0 {
            return Err(TangleError::NotAKnotFraction(f));
        }
    }
    let p1 = f1.numerator().abs();
    let p2 = f2.numerator().abs();
    if p1 != p2 {
        return Ok(false);
    }
    let p = p1;
    if p == 1 {
        // Both are the trivial knot regardless of q (including 1/0).
        return Ok(true);
    }
    let q1 = exact::rem_euclid(f1.denominator(), p);
    let q2 = exact::rem_euclid(f2.denominator(), p);
    // q1 is a unit mod p because gcd(p, q1) = 1.
    let (g, inv, _) = exact::extended_gcd(q1, p);
    debug_assert_eq!(g, 1);
    let q1_inv = exact::rem_euclid(inv, p);
    let matches = [q1, exact::rem_euclid(exact::neg(q1), p), q1_inv, exact::rem_euclid(exact::neg(q1_inv), p)];
    Ok(matches.contains(&q2))
}

// ---------------------------------------------------------------------------
// Montesinos presentations
// ---------------------------------------------------------------------------

/// An ordered Montesinos presentation `M(f1, ..., fn)`: the numerator
/// closure of the left-to-right sum of the rational tangles `T(fi)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MontesinosSpec(pub Vec<Fraction>);

/// Result of trying to reduce a three-tangle Montesinos presentation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MontesinosReduction {
    /// One tangle was integral; the closure is the 2-bridge knot or link of
    /// the returned fraction.
    TwoBridge(Fraction),
    /// Some tangle is the vertical tangle `1/0`; the closure splits along it
    /// and is a candidate connected sum, never the trivial knot.
    CompositeCandidate,
    /// No tangle is integral or vertical; the presentation does not reduce
    /// to a 2-bridge closure by tangle insertion.
    NotReducible,
}

/// Determinant of a Montesinos presentation:
/// `|q1 * ... * qn * (p1/q1 + ... + pn/qn)|`, evaluated exactly as
/// `|sum_i pi * prod_{j != i} qj|`.
///
/// This is the order of the first homology of the double branched cover when
/// finite (and 0 when that homology is infinite).
pub fn montesinos_determinant(spec: &MontesinosSpec) -> Int {
    let mut total: Int = 0;
    for (i, fi) in spec.0.iter().enumerate() {
        let mut term = fi.numerator();
        for (j, fj) in spec.0.iter().enumerate() {
            if i != j {
                term = exact::mul(term, fj.denominator());
            }
        }
        total = exact::add(total, term);
    }
    total.abs()
}

/// Reduces a three-tangle Montesinos presentation containing an integral
/// tangle to a single 2-bridge fraction.
///
/// Checked in order:
///
/// 1. if any tangle is the vertical tangle `1/0`, the closure decomposes
///    along it: [`MontesinosReduction::CompositeCandidate`];
/// 2. otherwise, if some tangle is integral `n/1`, it merges into a
///    neighbour (adding `n` to that tangle's fraction) and the two-tangle
///    closure is 2-bridge: [`MontesinosReduction::TwoBridge`];
/// 3. otherwise [`MontesinosReduction::NotReducible`].
///
/// The returned fraction `P/Q` satisfies `|P| = montesinos_determinant` and
/// is computed by a unimodular (determinant +/-1) integer transform, so `Q`
/// is well defined up to exactly the Schubert moves that preserve the knot.
pub fn montesinos_insert_integral(
    spec: &MontesinosSpec,
) -> Result<MontesinosReduction, TangleError> {
    if spec.0.len() != 3 {
        return Err(TangleError::WrongTangleCount { expected: 3, got: spec.0.len() });
    }
    if spec.0.iter().any(Fraction::is_infinite) {
        return Ok(MontesinosReduction::CompositeCandidate);
    }
    let Some(idx) = spec.0.iter().position(Fraction::is_integral) else {
        return Ok(MontesinosReduction::NotReducible);
    };
    let n = spec.0[idx].numerator();
    let others: Vec<&Fraction> = spec.0.iter().enumerate().filter(|&(i, _)| i != idx).map(|(_, f)| f).collect();
    let (a, b) = (others[0].numerator(), others[0].denominator());
    let (e, f) = (others[1].numerator(), others[1].denominator());

    // Numerator: determinant of M(a/b, (n*f + e)/f), with sign.
    let p_out = exact::add(exact::mul(a, f), exact::mul(b, exact::add(exact::mul(n, f), e)));
    // Denominator: complete the row (-f, e) to a unimodular matrix via
    // Bezout (x*e + y*f = 1) and apply it to the projective pair
    // (-(n*b + a), b).
    let (g, x, y) = exact::extended_gcd(e, f);
    debug_assert_eq!(g, 1, "canonical fractions are coprime");
    let pu = exact::neg(exact::add(exact::mul(n, b), a));
    let q_out = exact::sub(exact::mul(exact::neg(x), pu), exact::mul(y, b));

    let frac = Fraction::new(p_out, q_out)?;
    debug_assert_eq!(frac.numerator().abs(), montesinos_determinant(spec));
    Ok(MontesinosReduction::TwoBridge(frac))
}

// ---------------------------------------------------------------------------
// Laurent polynomials
// ---------------------------------------------------------------------------

/// An exact Laurent polynomial in one variable `A` with i128 coefficients.
///
/// Stored sparsely as `exponent -> coefficient` with no zero coefficients,
/// so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Int>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(1, 0)
    }

    /// The monomial `c * A^e`.
    pub fn monomial(c: Int, e: i64) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// True iff this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff this is the constant polynomial 1.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    /// Iterates over `(exponent, coefficient)` pairs in exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Int)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    /// Adds `c * A^e` in place.
    pub fn add_term(&mut self, c: Int, e: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry = exact::add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    /// Sum of two polynomials.
    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(c, e);
        }
        out
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(exact::mul(c1, c2), e1.checked_add(e2).expect("exponent overflow"));
            }
        }
        out
    }

    /// The polynomial with every coefficient negated.
    pub fn negated(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(exact::neg(c), e);
        }
        out
    }

    /// Multiplies by the monomial `c * A^e`.
    pub fn mul_monomial(&self, c: Int, e: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            out.add_term(exact::mul(c1, c), e1.checked_add(e).expect("exponent overflow"));
        }
        out
    }

    /// Substitutes `A -> A^{-1}` (negates every exponent).
    ///
    /// On bracket-style invariants this realizes passing to the mirror
    /// diagram.
    pub fn invert_variable(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(c, e.checked_neg().expect("exponent overflow"));
        }
        out
    }

    /// Evaluates exactly in the quotient ring `Z[A] / (A^4 + 1)`, returning
    /// the coordinates of `1, A, A^2, A^3`.
    ///
    /// Since `A^4 = -1` makes `A` a primitive 8th root of unity, this is
    /// evaluation at `t = A^{-4} = -1` territory: the exact route to knot
    /// determinants without floating point.
    pub fn eval_mod_a4_plus_1(&self) -> [Int; 4] {
        let mut coords = [0; 4];
        for (e, c) in self.terms() {
            let r = e.rem_euclid(8);
            let (idx, sign) = if r < 4 { (r as usize, 1) } else { ((r - 4) as usize, -1) };
            coords[idx] = exact::add(coords[idx], exact::mul(c, sign));
        }
        coords
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let ac = c.abs();
            match (ac, e) {
                (_, 0) => write!(f, "{ac}")?,
                (1, 1) => write!(f, "A")?,
                (1, _) => write!(f, "A^{e}")?,
                (_, 1) => write!(f, "{ac}*A")?,
                (_, _) => write!(f, "{ac}*A^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
