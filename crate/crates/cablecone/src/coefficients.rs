//! Monomial and polynomial arithmetic for the two coefficient rings.
//!
//! The bigraded side works over `F2[U,V]`; a differential entry is a single
//! monomial `U^a V^b`. The standard-complex side works over the ring
//! generated by `U_B`, `V_T` and two telescoping families `W_{B,i}`,
//! `W_{T,i}` (i over all of Z) subject to
//!
//! ```text
//! U_B V_T = 0,   U_B W_{B,i} = W_{B,i+1},   V_T W_{T,i} = W_{T,i+1}.
//! ```
//!
//! The W's are never stored: every monomial normalizes to
//! `U_B^i W_{B,0}^j` or `V_T^i W_{T,0}^j` with `j >= 0` and `(i, j)` outside
//! `Z^{<0} x {0}` (a bare negative power of `U_B` alone is not in the ring).
//! A general element is a constant bit plus two monomial sets, one per side;
//! products of opposite-side monomials vanish, which the test module checks
//! against a direct breadth-first search over the rewrite relations before
//! trusting the shortcut here.

use num::{BigInt, Zero};
use std::collections::BTreeSet;
use std::fmt;

pub type Exp = BigInt;

/// `U^a V^b` with both exponents nonnegative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UVMonomial {
    pub u: Exp,
    pub v: Exp,
}

impl UVMonomial {
    pub fn new(u: impl Into<Exp>, v: impl Into<Exp>) -> Self {
        let (u, v) = (u.into(), v.into());
        assert!(u >= Exp::zero() && v >= Exp::zero(), "negative exponent in U^a V^b");
        UVMonomial { u, v }
    }

    pub fn one() -> Self {
        UVMonomial { u: Exp::zero(), v: Exp::zero() }
    }

    pub fn is_one(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        UVMonomial { u: &self.u + &other.u, v: &self.v + &other.v }
    }
}

impl fmt::Display for UVMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        if !self.u.is_zero() {
            write!(f, "U^{}", self.u)?;
        }
        if !self.v.is_zero() {
            write!(f, "V^{}", self.v)?;
        }
        Ok(())
    }
}

/// Normalized monomial `U_B^i W_{B,0}^j`. Legal iff `j >= 0` and not
/// (`i < 0` and `j == 0`); negative `i` is allowed once a W soaks it up.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RUMonomial {
    pub i: Exp,
    pub j: Exp,
}

/// Normalized monomial `V_T^i W_{T,0}^j`; same constraint mirror-imaged.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RVMonomial {
    pub i: Exp,
    pub j: Exp,
}

fn side_legal(i: &Exp, j: &Exp) -> bool {
    *j > Exp::zero() || (j.is_zero() && *i >= Exp::zero())
}

macro_rules! side_monomial_impl {
    ($ty:ident) => {
        impl $ty {
            pub fn new(i: impl Into<Exp>, j: impl Into<Exp>) -> Self {
                Self::try_new(i.into(), j.into()).expect("exponent pair outside the ring")
            }

            pub fn try_new(i: Exp, j: Exp) -> Option<Self> {
                side_legal(&i, &j).then_some($ty { i, j })
            }

            pub fn is_one(&self) -> bool {
                self.i.is_zero() && self.j.is_zero()
            }

            pub fn mul(&self, other: &Self) -> Self {
                // j's are nonnegative so the product is always back in range.
                $ty { i: &self.i + &other.i, j: &self.j + &other.j }
            }

            /// Exact division `num / den` within the same side, if the
            /// quotient is again a legal monomial.
            pub fn divide(num: &Self, den: &Self) -> Option<Self> {
                Self::try_new(&num.i - &den.i, &num.j - &den.j)
            }
        }
    };
}

side_monomial_impl!(RUMonomial);
side_monomial_impl!(RVMonomial);

impl fmt::Display for RUMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_side(f, "U_B", "W_B", &self.i, &self.j)
    }
}

impl fmt::Display for RVMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_side(f, "V_T", "W_T", &self.i, &self.j)
    }
}

fn write_side(f: &mut fmt::Formatter<'_>, gen: &str, w: &str, i: &Exp, j: &Exp) -> fmt::Result {
    if i.is_zero() && j.is_zero() {
        return write!(f, "1");
    }
    if !i.is_zero() {
        write!(f, "{}^{}", gen, i)?;
    }
    if !j.is_zero() {
        write!(f, "{}^{}", w, j)?;
    }
    Ok(())
}

/// An element of the extended ring: a constant bit plus one monomial set per
/// side, everything mod 2. The sets never contain the unit monomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct XPoly {
    pub constant: bool,
    pub ru: BTreeSet<RUMonomial>,
    pub rv: BTreeSet<RVMonomial>,
}

fn toggle<T: Ord>(set: &mut BTreeSet<T>, x: T) {
    if !set.remove(&x) {
        set.insert(x);
    }
}

impl XPoly {
    pub fn zero() -> Self {
        XPoly::default()
    }

    pub fn one() -> Self {
        XPoly { constant: true, ..XPoly::default() }
    }

    pub fn from_ru(m: RUMonomial) -> Self {
        if m.is_one() {
            return XPoly::one();
        }
        let mut p = XPoly::default();
        p.ru.insert(m);
        p
    }

    pub fn from_rv(m: RVMonomial) -> Self {
        if m.is_one() {
            return XPoly::one();
        }
        let mut p = XPoly::default();
        p.rv.insert(m);
        p
    }

    pub fn is_zero(&self) -> bool {
        !self.constant && self.ru.is_empty() && self.rv.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.constant as usize + self.ru.len() + self.rv.len()
    }

    /// The single term if there is exactly one.
    pub fn single_term(&self) -> Option<XTerm> {
        match (self.constant, self.ru.len(), self.rv.len()) {
            (true, 0, 0) => Some(XTerm::One),
            (false, 1, 0) => Some(XTerm::RU(self.ru.first().unwrap().clone())),
            (false, 0, 1) => Some(XTerm::RV(self.rv.first().unwrap().clone())),
            _ => None,
        }
    }

    pub fn add_assign(&mut self, other: &XPoly) {
        self.constant ^= other.constant;
        for m in &other.ru {
            toggle(&mut self.ru, m.clone());
        }
        for m in &other.rv {
            toggle(&mut self.rv, m.clone());
        }
    }

    /// Product in the extended ring. Opposite-side products vanish: any such
    /// monomial contains both `U_B` and `V_T` after expanding a telescoped W,
    /// so it rewrites to zero (see the rewrite-search test below).
    pub fn mul(&self, other: &XPoly) -> XPoly {
        let mut out = XPoly::default();
        if self.constant && other.constant {
            out.constant = true;
        }
        if self.constant {
            for m in &other.ru {
                toggle(&mut out.ru, m.clone());
            }
            for m in &other.rv {
                toggle(&mut out.rv, m.clone());
            }
        }
        if other.constant {
            for m in &self.ru {
                toggle(&mut out.ru, m.clone());
            }
            for m in &self.rv {
                toggle(&mut out.rv, m.clone());
            }
        }
        // Two non-unit monomials on one side can't multiply to the unit:
        // that would need j1 = j2 = 0 and i1 = -i2 with both nonnegative.
        for a in &self.ru {
            for b in &other.ru {
                let prod = a.mul(b);
                debug_assert!(!prod.is_one());
                toggle(&mut out.ru, prod);
            }
        }
        for a in &self.rv {
            for b in &other.rv {
                let prod = a.mul(b);
                debug_assert!(!prod.is_one());
                toggle(&mut out.rv, prod);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum XTerm {
    One,
    RU(RUMonomial),
    RV(RVMonomial),
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            Ok(())
        };
        if self.constant {
            sep(f)?;
            write!(f, "1")?;
        }
        for m in &self.ru {
            sep(f)?;
            write!(f, "{}", m)?;
        }
        for m in &self.rv {
            sep(f)?;
            write!(f, "{}", m)?;
        }
        Ok(())
    }
}

/// Ring map sending `U^a V^b` (not both zero) to
/// `U_B^a W_{B,0}^b + V_T^b W_{T,0}^a`, and 1 to 1. Multiplicative because
/// the cross terms of a product pair a B-side with a T-side monomial and die.
pub fn embed_uv_to_x(m: &UVMonomial) -> XPoly {
    if m.is_one() {
        return XPoly::one();
    }
    let mut p = XPoly::default();
    p.ru.insert(RUMonomial::new(m.u.clone(), m.v.clone()));
    p.rv.insert(RVMonomial::new(m.v.clone(), m.u.clone()));
    p
}
