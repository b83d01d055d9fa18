//! Closed-form evaluators for the known bounds on `r(l)`.
//!
//! Every evaluator works in exact rational arithmetic. Unspecified `o(1)` and
//! `h(n)` corrections are taken as zero; [`BoundKind`] records whether a value
//! is such a main term or a finite expression with nothing dropped.
//!
//! Notation: `l` is the subset size, `c = 1 − l / C(n,3)` the co-density,
//! `α` the independence number supplied by the caller (conventionally `n`),
//! and `ρ` the diameter cap.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundInputs {
    n: u64,
    l: BigRational,
    c: BigRational,
    rho: Option<u64>,
    alpha: u64,
}

fn int(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn frac(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `C(n,3)` as an exact rational.
fn triples(n: u64) -> BigRational {
    let n = BigInt::from(n);
    let one = BigInt::one();
    let two = BigInt::from(2);
    BigRational::new(&n * (&n - &one) * (&n - &two), BigInt::from(6))
}

impl BoundInputs {
    /// Inputs for an integer subset size `l <= C(n,3)`; `α` defaults to `n`.
    pub fn new(n: u64, l: u64) -> Result<Self> {
        Self::with_size(n, int(l))
    }

    /// Inputs for a (possibly fractional) subset size.
    pub fn with_size(n: u64, l: BigRational) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGroundSet(n as usize));
        }
        let total = triples(n);
        if l.is_negative() || l > total {
            return Err(Error::CardinalityOutOfRange {
                l: l.to_string(),
                max: total.to_integer().to_u64().unwrap_or(u64::MAX),
            });
        }
        let c = BigRational::one() - &l / &total;
        Ok(Self {
            n,
            l,
            c,
            rho: None,
            alpha: n,
        })
    }

    /// Inputs from the co-density `c ∈ [0, 1]`, with `l = (1 − c)·C(n,3)`.
    pub fn from_codensity(n: u64, c: BigRational) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGroundSet(n as usize));
        }
        if c.is_negative() || c > BigRational::one() {
            return Err(Error::CodensityOutOfRange);
        }
        let l = (BigRational::one() - &c) * triples(n);
        Ok(Self {
            n,
            l,
            c,
            rho: None,
            alpha: n,
        })
    }

    pub fn with_rho(mut self, rho: u64) -> Result<Self> {
        if rho > self.n {
            return Err(Error::RhoOutOfRange { rho, n: self.n });
        }
        self.rho = Some(rho);
        Ok(self)
    }

    pub fn with_alpha(mut self, alpha: u64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn l(&self) -> &BigRational {
        &self.l
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn rho(&self) -> Option<u64> {
        self.rho
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    fn alpha_checked(&self, what: &'static str) -> Result<BigRational> {
        if self.alpha == 0 {
            return Err(Error::ZeroAlpha(what));
        }
        Ok(int(self.alpha))
    }

    fn rho_and_l(&self, what: &'static str) -> Result<(BigRational, BigRational)> {
        let rho = self.rho.ok_or(Error::MissingRho(what))?;
        if self.l.is_zero() {
            return Err(Error::ZeroCardinality(what));
        }
        Ok((int(rho), self.l.clone()))
    }

    fn n5_over_8(&self) -> BigRational {
        let n = int(self.n);
        &n * &n * &n * &n * &n / int(8)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// Main term of an asymptotic lower bound.
    LowerMain,
    /// Main term of an asymptotic upper bound.
    UpperMain,
    /// Finite expression valid as stated.
    ExactFinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundValue {
    pub name: &'static str,
    pub value: BigRational,
    pub kind: BoundKind,
}

impl BoundValue {
    fn new(name: &'static str, value: BigRational, kind: BoundKind) -> Self {
        Self { name, value, kind }
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}

/// `l² / (2α)`: the sharp asymptotics for `n ≪ l ≲ n²`.
pub fn thm1_case12_main(input: &BoundInputs) -> Result<BoundValue> {
    let alpha = input.alpha_checked("thm1_case12_main")?;
    let l = input.l();
    Ok(BoundValue::new(
        "thm1_c12",
        l * l / (int(2) * alpha),
        BoundKind::LowerMain,
    ))
}

/// `(l²/α, 5l²/α)`: lower and upper main terms for `n² ≪ l ≪ n³`.
pub fn thm1_case3_bounds(input: &BoundInputs) -> Result<(BoundValue, BoundValue)> {
    let alpha = input.alpha_checked("thm1_case3_bounds")?;
    let l = input.l();
    let lo = l * l / &alpha;
    let hi = &lo * int(5);
    Ok((
        BoundValue::new("thm1_c3_lo", lo, BoundKind::LowerMain),
        BoundValue::new("thm1_c3_hi", hi, BoundKind::UpperMain),
    ))
}

/// `n⁵ (1/8 − c/4 + c²/72)`.
pub fn thm1_case4_main(input: &BoundInputs) -> BoundValue {
    let n = int(input.n);
    let c = input.c();
    let poly = frac(1, 8) - c * frac(1, 4) + c * c * frac(1, 72);
    BoundValue::new(
        "thm1_c4",
        &n * &n * &n * &n * &n * poly,
        BoundKind::LowerMain,
    )
}

/// `3l² / (2n)`.
pub fn thm2_lower_main(input: &BoundInputs) -> BoundValue {
    let l = input.l();
    BoundValue::new(
        "thm2_lo",
        int(3) * l * l / int(2 * input.n),
        BoundKind::LowerMain,
    )
}

/// `9l² / (2α)`.
pub fn thm3_pt1_upper_main(input: &BoundInputs) -> Result<BoundValue> {
    let alpha = input.alpha_checked("thm3_pt1_upper_main")?;
    let l = input.l();
    Ok(BoundValue::new(
        "thm3_p1_hi",
        int(9) * l * l / (int(2) * alpha),
        BoundKind::UpperMain,
    ))
}

/// `(n⁵/8)(1 − 2c + q·c² − 10/n + 20c/n − 10q·c²/n)` for the quadratic coefficient `q`.
fn dense_lower(input: &BoundInputs, q: BigRational) -> BigRational {
    let n = int(input.n);
    let c = input.c();
    let one = BigRational::one();
    let c2 = c * c;
    let poly =
        &one - int(2) * c + &q * &c2 - int(10) / &n + int(20) * c / &n - int(10) * &q * &c2 / &n;
    input.n5_over_8() * poly
}

pub fn thm3_pt2_lower_main(input: &BoundInputs) -> BoundValue {
    BoundValue::new(
        "thm3_p2_lo",
        dense_lower(input, frac(1, 3)),
        BoundKind::LowerMain,
    )
}

pub fn thm3_pt3_lower_main(input: &BoundInputs) -> BoundValue {
    BoundValue::new(
        "thm3_p3_lo",
        dense_lower(input, frac(2, 9)),
        BoundKind::LowerMain,
    )
}

/// `(n⁵/8)(1 − 2c − 10/n + 20c/n)`, with no correction term.
pub fn thm3_pt4_lower(input: &BoundInputs) -> BoundValue {
    BoundValue::new(
        "thm3_p4_lo",
        dense_lower(input, BigRational::zero()),
        BoundKind::ExactFinite,
    )
}

/// `(n⁵/8)(1 − c)²`.
pub fn formula1_upper(input: &BoundInputs) -> BoundValue {
    let one_minus = BigRational::one() - input.c();
    BoundValue::new(
        "f1_hi",
        input.n5_over_8() * &one_minus * &one_minus,
        BoundKind::UpperMain,
    )
}

/// `(n⁵/8)(1 − c)² / 3`.
pub fn formula2_lower(input: &BoundInputs) -> BoundValue {
    let one_minus = BigRational::one() - input.c();
    BoundValue::new(
        "f2_lo",
        input.n5_over_8() * &one_minus * &one_minus / int(3),
        BoundKind::LowerMain,
    )
}

/// `(l²/n)(2 − ρ³/(6l))`.
pub fn thm4_lower_main(input: &BoundInputs) -> Result<BoundValue> {
    let (rho, l) = input.rho_and_l("thm4_lower_main")?;
    let n = int(input.n);
    let value = &l * &l / &n * (int(2) - &rho * &rho * &rho / (int(6) * &l));
    Ok(BoundValue::new("thm4_lo", value, BoundKind::LowerMain))
}

/// `(l²/n)(2 − ρ³/(6l) − 90n²/l − 6n/l)`: the finite edge count certified by peeling.
pub fn peeling_total_lower(input: &BoundInputs) -> Result<BoundValue> {
    let (rho, l) = input.rho_and_l("peeling_total_lower")?;
    let n = int(input.n);
    let bracket =
        int(2) - &rho * &rho * &rho / (int(6) * &l) - int(90) * &n * &n / &l - int(6) * &n / &l;
    Ok(BoundValue::new(
        "peel_total_lo",
        &l * &l / &n * bracket,
        BoundKind::ExactFinite,
    ))
}

/// Caps on `|B_1| + |B_2|` and `|B_3|`: `35n²` and `ρ³/6 + 20n²`.
pub fn lemma_caps(n: u64, rho: u64) -> Result<(BigRational, BigRational)> {
    if rho > n {
        return Err(Error::RhoOutOfRange { rho, n });
    }
    let nn = int(n) * int(n);
    let r = int(rho);
    Ok((int(35) * &nn, &r * &r * &r / int(6) + int(20) * &nn))
}

/// Which comparison [`crossover_threshold`] solves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossoverForm {
    /// `(n⁵/8)(1 − 2c − 10/n + 20c/n) ≥ 3(c·C(n,3))²/2`, read literally.
    Displayed,
    /// The same left side against `3l²/(2n)` at `l = (1 − c)·C(n,3)`.
    Thm4VsThm2,
    /// The `2c²/9` dense lower bound against `3(c·C(n,3))²/(2n)`.
    Thm3Pt3VsScaled,
}

fn crossover_gap(n: u64, c: &BigRational, form: CrossoverForm) -> BigRational {
    let input = BoundInputs::from_codensity(n, c.clone()).expect("c checked by caller");
    let size = triples(n);
    match form {
        CrossoverForm::Displayed => {
            let x = c * &size;
            thm3_pt4_lower(&input).value - int(3) * &x * &x / int(2)
        }
        CrossoverForm::Thm4VsThm2 => thm3_pt4_lower(&input).value - thm2_lower_main(&input).value,
        CrossoverForm::Thm3Pt3VsScaled => {
            let x = c * &size;
            thm3_pt3_lower_main(&input).value - int(3) * &x * &x / int(2 * n)
        }
    }
}

/// The comparison as printed: does `(n⁵/8)(1 − 2c − 10/n + 20c/n)` reach
/// `3(c·C(n,3))²/2` at this finite `n`?
pub fn crossover_check(input: &BoundInputs) -> bool {
    !crossover_gap(input.n, input.c(), CrossoverForm::Displayed).is_negative()
}

/// Largest `c ∈ [0, 1]` at which the comparison still holds, by bisection
/// in exact arithmetic to within `2^-iterations`. `None` when it fails at
/// `c = 0` already.
pub fn crossover_threshold(n: u64, form: CrossoverForm, iterations: u32) -> Option<f64> {
    if n < 3 {
        return None;
    }
    let holds = |c: &BigRational| !crossover_gap(n, c, form).is_negative();
    let mut lo = BigRational::zero();
    let mut hi = BigRational::one();
    if !holds(&lo) {
        return None;
    }
    if holds(&hi) {
        return Some(1.0);
    }
    for _ in 0..iterations {
        let mid = (&lo + &hi) / int(2);
        if holds(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ((lo + hi) / int(2)).to_f64()
}
