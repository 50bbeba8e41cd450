//! Exact polynomials in the eight complex phase variables
//! `η₁, η₂, ζ₁, ζ₂, η̄₁, η̄₂, ζ̄₁, ζ̄₂`, treated as independent symbols.
//!
//! Coefficients are complex numbers with rational real and imaginary parts,
//! so sums, products and brackets carry no round-off.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::{Complex, Complex64};
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::spinor::SpinorPoint;

pub type Rational = Ratio<i128>;
pub type ExactComplex = Complex<Rational>;

pub const NUM_VARS: usize = 8;

/// Exponent vector, indexed by [`PhaseVar::index`].
pub type Exponents = [u8; NUM_VARS];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PhaseVar {
    Eta1,
    Eta2,
    Zeta1,
    Zeta2,
    EtaBar1,
    EtaBar2,
    ZetaBar1,
    ZetaBar2,
}

impl PhaseVar {
    pub const ALL: [PhaseVar; NUM_VARS] = [
        PhaseVar::Eta1,
        PhaseVar::Eta2,
        PhaseVar::Zeta1,
        PhaseVar::Zeta2,
        PhaseVar::EtaBar1,
        PhaseVar::EtaBar2,
        PhaseVar::ZetaBar1,
        PhaseVar::ZetaBar2,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }

    pub fn conjugate(self) -> Self {
        Self::ALL[(self.index() + 4) % NUM_VARS]
    }

    pub fn is_holomorphic(self) -> bool {
        self.index() < 4
    }

    pub fn name(self) -> &'static str {
        match self {
            PhaseVar::Eta1 => "eta1",
            PhaseVar::Eta2 => "eta2",
            PhaseVar::Zeta1 => "zeta1",
            PhaseVar::Zeta2 => "zeta2",
            PhaseVar::EtaBar1 => "conj(eta1)",
            PhaseVar::EtaBar2 => "conj(eta2)",
            PhaseVar::ZetaBar1 => "conj(zeta1)",
            PhaseVar::ZetaBar2 => "conj(zeta2)",
        }
    }

    fn value(self, p: &SpinorPoint) -> Complex64 {
        match self {
            PhaseVar::Eta1 => p.eta[0],
            PhaseVar::Eta2 => p.eta[1],
            PhaseVar::Zeta1 => p.zeta[0],
            PhaseVar::Zeta2 => p.zeta[1],
            PhaseVar::EtaBar1 => p.eta[0].conj(),
            PhaseVar::EtaBar2 => p.eta[1].conj(),
            PhaseVar::ZetaBar1 => p.zeta[0].conj(),
            PhaseVar::ZetaBar2 => p.zeta[1].conj(),
        }
    }
}

pub fn rational(n: i128, d: i128) -> Rational {
    Ratio::new(n, d)
}

pub fn exact(re: Rational, im: Rational) -> ExactComplex {
    Complex::new(re, im)
}

pub fn exact_int(re: i128, im: i128) -> ExactComplex {
    Complex::new(Ratio::from_integer(re), Ratio::from_integer(im))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn exact_to_f64(c: &ExactComplex) -> Complex64 {
    Complex64::new(rational_to_f64(&c.re), rational_to_f64(&c.im))
}

/// Sparse polynomial: exponent vector → nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PhasePolynomial {
    terms: BTreeMap<Exponents, ExactComplex>,
}

impl PhasePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ExactComplex::one())
    }

    pub fn constant(c: ExactComplex) -> Self {
        Self::monomial([0; NUM_VARS], c)
    }

    pub fn var(v: PhaseVar) -> Self {
        let mut e = [0; NUM_VARS];
        e[v.index()] = 1;
        Self::monomial(e, ExactComplex::one())
    }

    pub fn monomial(exponents: Exponents, c: ExactComplex) -> Self {
        let mut p = Self::zero();
        p.add_term(exponents, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, ExactComplex)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Adds `c·x^e`, dropping the entry if it cancels.
    pub fn add_term(&mut self, exponents: Exponents, c: ExactComplex) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(exponents)
            .or_insert_with(ExactComplex::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &ExactComplex)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &Exponents) -> ExactComplex {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(ExactComplex::zero)
    }

    pub fn constant_term(&self) -> ExactComplex {
        self.coefficient(&[0; NUM_VARS])
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&k| k as usize).sum())
            .max()
    }

    pub fn depends_on(&self, v: PhaseVar) -> bool {
        self.terms.keys().any(|e| e[v.index()] > 0)
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, k)| (*e, *k * *c)))
    }

    /// Formal complex conjugate: swaps each variable with its conjugate and
    /// conjugates the coefficients. Real-valued functions are fixed points.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let mut swapped = [0; NUM_VARS];
            for (i, &k) in e.iter().enumerate() {
                swapped[PhaseVar::from_index(i).conjugate().index()] = k;
            }
            (swapped, c.conj())
        }))
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn derivative(&self, v: PhaseVar) -> Self {
        let i = v.index();
        Self::from_terms(self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut d = *e;
            let k = d[i];
            d[i] -= 1;
            (d, *c * Rational::from_integer(k as i128))
        }))
    }

    /// Term-by-term evaluation at a point, in floating point.
    pub fn eval(&self, p: &SpinorPoint) -> Complex64 {
        let values: Vec<Complex64> = PhaseVar::ALL.iter().map(|v| v.value(p)).collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = exact_to_f64(c);
                for (x, &k) in values.iter().zip(e.iter()) {
                    for _ in 0..k {
                        t *= *x;
                    }
                }
                t
            })
            .sum()
    }
}

impl fmt::Debug for PhasePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PhasePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({}{:+}i)", c.re, c.im)?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*{}", PhaseVar::from_index(i).name())?,
                    _ => write!(f, "*{}^{}", PhaseVar::from_index(i).name(), k)?,
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a PhasePolynomial> for &'a PhasePolynomial {
    type Output = PhasePolynomial;

    fn add(self, rhs: &'a PhasePolynomial) -> PhasePolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, *c);
        }
        out
    }
}

impl<'a> Sub<&'a PhasePolynomial> for &'a PhasePolynomial {
    type Output = PhasePolynomial;

    fn sub(self, rhs: &'a PhasePolynomial) -> PhasePolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, -*c);
        }
        out
    }
}

impl<'a> Mul<&'a PhasePolynomial> for &'a PhasePolynomial {
    type Output = PhasePolynomial;

    fn mul(self, rhs: &'a PhasePolynomial) -> PhasePolynomial {
        let mut out = PhasePolynomial::zero();
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in rhs.terms.iter() {
                let mut e = [0; NUM_VARS];
                for i in 0..NUM_VARS {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(e, *ca * *cb);
            }
        }
        out
    }
}

impl Neg for &PhasePolynomial {
    type Output = PhasePolynomial;

    fn neg(self) -> PhasePolynomial {
        self.scale(&-ExactComplex::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<PhasePolynomial> for PhasePolynomial {
            type Output = PhasePolynomial;
            fn $m(self, rhs: PhasePolynomial) -> PhasePolynomial {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a PhasePolynomial> for PhasePolynomial {
            type Output = PhasePolynomial;
            fn $m(self, rhs: &'a PhasePolynomial) -> PhasePolynomial {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PhasePolynomial {
    type Output = PhasePolynomial;

    fn neg(self) -> PhasePolynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinor::SpinorPoint;

    fn x(v: PhaseVar) -> PhasePolynomial {
        PhasePolynomial::var(v)
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = &x(PhaseVar::Eta1) - &x(PhaseVar::Eta1);
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
        assert_eq!(p.degree(), None);
    }

    #[test]
    fn derivative_of_power() {
        let e = x(PhaseVar::Eta1);
        let cube = &(&e * &e) * &e;
        let d = cube.derivative(PhaseVar::Eta1);
        let expected = (&e * &e).scale(&exact_int(3, 0));
        assert_eq!(d, expected);
        assert!(cube.derivative(PhaseVar::EtaBar1).is_zero());
    }

    #[test]
    fn conjugation_fixes_real_functions() {
        let norm = &x(PhaseVar::EtaBar1) * &x(PhaseVar::Eta1);
        assert!(norm.is_real());
        let i_eta = x(PhaseVar::Eta1).scale(&exact_int(0, 1));
        assert!(!i_eta.is_real());
        assert_eq!(i_eta.conj(), x(PhaseVar::EtaBar1).scale(&exact_int(0, -1)));
    }

    #[test]
    fn eval_matches_hand_computation() {
        let p = SpinorPoint::from_real([1.0, 2.0, 0.5, 0.0], [0.0, -1.0, 3.0, 1.0]);
        let f = &(&x(PhaseVar::EtaBar1) * &x(PhaseVar::Zeta2)).scale(&exact_int(0, 2))
            + &PhasePolynomial::constant(exact(rational(1, 2), rational(0, 1)));
        let expected = p.eta[0].conj() * p.zeta[1] * Complex64::new(0.0, 2.0) + 0.5;
        assert!((f.eval(&p) - expected).norm() < 1e-15);
    }
}
