//! Exact multivectors over `Cl₃^{⊗m}` and minimal-left-ideal states.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::blade::{Blade, FactorBlade};
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// Soft cap on the number of tensor factors for pure algebra work.
pub const MAX_ALGEBRA_FACTORS: usize = 6;

/// A finite linear combination of blades with exact coefficients.
///
/// No zero coefficient is ever stored, so two multivectors are equal exactly
/// when their term maps are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multivector {
    num_factors: usize,
    terms: BTreeMap<Blade, GaussianRational>,
}

impl Multivector {
    pub fn zero(m: usize) -> Self {
        Self { num_factors: m, terms: BTreeMap::new() }
    }

    /// `c · (1 ⊗ … ⊗ 1)`.
    pub fn scalar(m: usize, c: GaussianRational) -> Self {
        Self::from_term(Blade::identity(m), c)
    }

    pub fn identity(m: usize) -> Self {
        Self::scalar(m, GaussianRational::one())
    }

    pub fn from_blade(b: Blade) -> Self {
        Self::from_term(b, GaussianRational::one())
    }

    pub fn from_term(b: Blade, c: GaussianRational) -> Self {
        let mut mv = Self::zero(b.num_factors());
        mv.add_term(b, c);
        mv
    }

    pub fn num_factors(&self) -> usize {
        self.num_factors
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &Blade) -> GaussianRational {
        self.terms.get(b).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// The blade and coefficient if this is a single term.
    pub fn as_single_term(&self) -> Option<(&Blade, &GaussianRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Accumulate `c · b`, dropping the entry if it cancels.
    ///
    /// Panics if `b` has the wrong factor count; callers check first.
    pub fn add_term(&mut self, b: Blade, c: GaussianRational) {
        assert_eq!(b.num_factors(), self.num_factors, "blade factor count");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_factors(&self, rhs: &Self) -> Result<()> {
        if self.num_factors != rhs.num_factors {
            return Err(Error::FactorMismatch { left: self.num_factors, right: rhs.num_factors });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_factors(rhs)?;
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.try_add(&-rhs)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_factors);
        }
        Self {
            num_factors: self.num_factors,
            terms: self.terms.iter().map(|(b, v)| (b.clone(), v * c)).collect(),
        }
    }

    /// Bilinear extension of the blade product.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_factors(rhs)?;
        let mut out = Self::zero(self.num_factors);
        for (bx, cx) in &self.terms {
            for (by, cy) in &rhs.terms {
                let (sign, bz) = bx.product(by)?;
                let c = cx * cy;
                out.add_term(bz, if sign < 0 { -c } else { c });
            }
        }
        Ok(out)
    }

    /// `self ⊗ rhs` with `num_factors` added.
    pub fn tensor(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.num_factors + rhs.num_factors);
        for (bx, cx) in &self.terms {
            for (by, cy) in &rhs.terms {
                out.add_term(bx.tensor(by), cx * cy);
            }
        }
        out
    }

    /// Ratio `c` with `self = c · other`, if one exists. Both zero gives `None`.
    pub fn proportionality_to(&self, other: &Self) -> Option<GaussianRational> {
        if self.num_factors != other.num_factors || other.is_zero() {
            return None;
        }
        let (b0, c0) = other.terms.iter().next()?;
        let ratio = self.coeff(b0).checked_div(c0).ok()?;
        if ratio.is_zero() {
            return None;
        }
        (other.scale(&ratio) == *self).then_some(ratio)
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.try_add(rhs).expect("factor count mismatch")
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.try_sub(rhs).expect("factor count mismatch")
    }
}

impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.try_mul(rhs).expect("factor count mismatch")
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        Multivector {
            num_factors: self.num_factors,
            terms: self.terms.iter().map(|(b, c)| (b.clone(), -c)).collect(),
        }
    }
}

/// `ε₁^{⊗m}` with `ε₁ = ½(1 + γ₃)`: `2^m` terms, each with coefficient `2^{-m}`.
pub fn idempotent_eps(m: usize) -> Result<Multivector> {
    if m == 0 {
        return Err(Error::NoFactors);
    }
    if m > MAX_ALGEBRA_FACTORS {
        return Err(Error::TooManyFactors { got: m, limit: MAX_ALGEBRA_FACTORS });
    }
    let half = GaussianRational::from_ratio(1, 2);
    let single = {
        let mut e = Multivector::zero(1);
        e.add_term(Blade::identity(1), half.clone());
        e.add_term(Blade::uniform(FactorBlade::G3, 1), half);
        e
    };
    Ok((1..m).fold(single.clone(), |acc, _| acc.tensor(&single)))
}

/// An element of the left ideal generated by `ε₁^{⊗m}`, i.e. `value · ε = value`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealElement {
    value: Multivector,
}

impl IdealElement {
    /// `x · ε₁^{⊗m}`; always lands in the ideal.
    pub fn from_left_factor(x: &Multivector) -> Result<Self> {
        let eps = idempotent_eps(x.num_factors())?;
        Ok(Self { value: x.try_mul(&eps)? })
    }

    /// Accept `value` only if it is absorbed by `ε₁^{⊗m}`.
    pub fn try_new(value: Multivector) -> Result<Self> {
        let eps = idempotent_eps(value.num_factors())?;
        if value.try_mul(&eps)? != value {
            return Err(Error::InvalidTable(
                "element is not absorbed by the idempotent".to_string(),
            ));
        }
        Ok(Self { value })
    }

    pub fn zero(m: usize) -> Self {
        Self { value: Multivector::zero(m) }
    }

    pub fn value(&self) -> &Multivector {
        &self.value
    }

    pub fn into_value(self) -> Multivector {
        self.value
    }

    pub fn num_factors(&self) -> usize {
        self.value.num_factors()
    }

    /// Left action `a · self`, which stays in the ideal.
    pub fn left_mul(&self, a: &Multivector) -> Result<Self> {
        Ok(Self { value: a.try_mul(&self.value)? })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        Ok(Self { value: self.value.try_add(&rhs.value)? })
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { value: self.value.scale(c) }
    }

    /// Coordinates in the qubit sector selected by the Pauli representation
    /// `γᵢ ↦ σᵢ` on every factor.
    ///
    /// Entry `b` is the amplitude of `|b⟩` in `ρ(value)|0…0⟩`, with factor 0 as
    /// the most significant bit. Since `ρ(ε₁) = |0⟩⟨0|`, this is the state the
    /// element stands for. It is linear and exact.
    pub fn sector_coordinates(&self) -> Vec<GaussianRational> {
        let m = self.num_factors();
        let mut out = vec![GaussianRational::zero(); 1 << m];
        for (blade, c) in self.value.terms() {
            let mut index = 0usize;
            let mut quarter_turns = 0u8;
            for f in blade.factors() {
                let (bit, q) = factor_on_ket_zero(*f);
                index = (index << 1) | bit as usize;
                quarter_turns = (quarter_turns + q) % 4;
            }
            let phase = i_power(quarter_turns);
            out[index] += &(c * &phase);
        }
        out
    }

    /// The canonical representative of this state in the Pauli sector:
    /// `Σ_b c_b (γ₁^{b₁} ⊗ … ⊗ γ₁^{b_m})`, to be read as right-multiplied by `ε`.
    ///
    /// Two ideal elements describe the same qubit state exactly when their
    /// sector forms are equal.
    pub fn sector_form(&self) -> Multivector {
        let m = self.num_factors();
        let mut out = Multivector::zero(m);
        for (index, c) in self.sector_coordinates().into_iter().enumerate() {
            let factors = (0..m)
                .map(|f| {
                    if index >> (m - 1 - f) & 1 == 1 {
                        FactorBlade::G1
                    } else {
                        FactorBlade::ONE
                    }
                })
                .collect();
            out.add_term(Blade::new(factors).expect("m >= 1"), c);
        }
        out
    }

    /// Ratio `c` with `self = c · other` as qubit states.
    pub fn sector_proportionality_to(&self, other: &Self) -> Option<GaussianRational> {
        self.sector_form().proportionality_to(&other.sector_form())
    }

    /// True when the element maps to the zero state in the Pauli sector.
    pub fn is_sector_zero(&self) -> bool {
        self.sector_coordinates().iter().all(GaussianRational::is_zero)
    }
}

fn i_power(q: u8) -> GaussianRational {
    match q % 4 {
        0 => GaussianRational::one(),
        1 => GaussianRational::i(),
        2 => -GaussianRational::one(),
        _ => -GaussianRational::i(),
    }
}

// Image of |0⟩ under the Pauli product of a factor blade: (bit, phase as a power of i).
fn factor_on_ket_zero(b: FactorBlade) -> (u8, u8) {
    let mut bit = 0u8;
    let mut q = 0u8;
    // Apply γ₃, then γ₂, then γ₁ (rightmost generator acts first).
    for idx in b.indices().collect::<Vec<_>>().into_iter().rev() {
        match idx {
            1 => bit ^= 1,
            2 => {
                // σ₂|0⟩ = i|1⟩, σ₂|1⟩ = -i|0⟩
                q += if bit == 0 { 1 } else { 3 };
                bit ^= 1;
            }
            _ => {
                if bit == 1 {
                    q += 2;
                }
            }
        }
    }
    (bit, q % 4)
}

/// The single-qubit encoding `a·γ₁ε₁ + b·γ₃ε₁`.
///
/// Under `γᵢ ↦ σᵢ`, `γ₁ε₁` is the column `|1⟩` and `γ₃ε₁ = ε₁` is `|0⟩`.
/// Normalization is left to the caller.
pub fn encode_qubit(a: &GaussianRational, b: &GaussianRational) -> IdealElement {
    let mut x = Multivector::zero(1);
    x.add_term(Blade::uniform(FactorBlade::G1, 1), a.clone());
    x.add_term(Blade::uniform(FactorBlade::G3, 1), b.clone());
    IdealElement::from_left_factor(&x).expect("m = 1")
}
