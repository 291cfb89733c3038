//! Canonical γ-monomials of Cl₃ and their tensor products.

use std::fmt;

use crate::error::{Error, Result};

/// A canonical monomial of Cl₃, stored as a 3-bit subset of `{γ₁, γ₂, γ₃}`.
///
/// Bit `k` (0-based) set means `γ_{k+1}` is present. Generators are always
/// understood in ascending order; signs live in multivector coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FactorBlade(u8);

impl FactorBlade {
    pub const ONE: FactorBlade = FactorBlade(0b000);
    pub const G1: FactorBlade = FactorBlade(0b001);
    pub const G2: FactorBlade = FactorBlade(0b010);
    pub const G3: FactorBlade = FactorBlade(0b100);
    pub const G12: FactorBlade = FactorBlade(0b011);
    pub const G13: FactorBlade = FactorBlade(0b101);
    pub const G23: FactorBlade = FactorBlade(0b110);
    pub const G123: FactorBlade = FactorBlade(0b111);

    /// All eight monomials in mask order.
    pub const ALL: [FactorBlade; 8] = [
        FactorBlade(0),
        FactorBlade(1),
        FactorBlade(2),
        FactorBlade(3),
        FactorBlade(4),
        FactorBlade(5),
        FactorBlade(6),
        FactorBlade(7),
    ];

    pub fn from_mask(mask: u8) -> Option<Self> {
        (mask < 8).then_some(FactorBlade(mask))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    /// Number of generators in the monomial.
    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    /// Generator indices (1-based) in ascending order.
    pub fn indices(self) -> impl Iterator<Item = u8> {
        (0..3u8).filter(move |k| self.0 & (1 << k) != 0).map(|k| k + 1)
    }

    /// Sign `±1` of the square; `γ₁γ₂`, `γ₁γ₃`, `γ₂γ₃` and `γ₁γ₂γ₃` square to `-1`.
    pub fn square_sign(self) -> i8 {
        self.product(self).0
    }

    /// Product `self · rhs = sign · z` with `γᵢ² = 1` and `γᵢγⱼ = -γⱼγᵢ`.
    ///
    /// Each generator of `rhs` must move left past every generator of `self`
    /// with a larger index before it cancels or settles.
    pub fn product(self, rhs: FactorBlade) -> (i8, FactorBlade) {
        let mut swaps = 0u32;
        for k in 0..3u8 {
            if rhs.0 & (1 << k) != 0 {
                swaps += (self.0 >> (k + 1)).count_ones();
            }
        }
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        (sign, FactorBlade(self.0 ^ rhs.0))
    }

    /// Canonicalize an arbitrary index word (e.g. `[3, 1]`), returning the sign
    /// picked up by sorting. Repeated indices cancel to `γᵢ² = 1`.
    pub fn from_word(word: &[u8]) -> Result<(i8, FactorBlade)> {
        let mut acc = (1i8, FactorBlade::ONE);
        for &idx in word {
            if !(1..=3).contains(&idx) {
                return Err(Error::Syntax {
                    pos: 0,
                    msg: format!("generator index {idx} not in 1..3"),
                });
            }
            let (s, z) = acc.1.product(FactorBlade(1 << (idx - 1)));
            acc = (acc.0 * s, z);
        }
        Ok(acc)
    }
}

impl fmt::Display for FactorBlade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "g")?;
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// A tensor monomial `b₁ ⊗ b₂ ⊗ … ⊗ b_m` across `m ≥ 1` factors.
///
/// Ordering is lexicographic on the factor masks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade {
    factors: Vec<FactorBlade>,
}

impl Blade {
    pub fn new(factors: Vec<FactorBlade>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::NoFactors);
        }
        Ok(Self { factors })
    }

    pub fn identity(m: usize) -> Self {
        Self { factors: vec![FactorBlade::ONE; m.max(1)] }
    }

    /// The same monomial in every factor, e.g. `γ₃ ⊗ γ₃ ⊗ γ₃`.
    pub fn uniform(b: FactorBlade, m: usize) -> Self {
        Self { factors: vec![b; m.max(1)] }
    }

    pub fn factors(&self) -> &[FactorBlade] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.iter().all(|f| *f == FactorBlade::ONE)
    }

    /// Ungraded tensor product: factor signs multiply independently.
    pub fn product(&self, rhs: &Blade) -> Result<(i8, Blade)> {
        if self.factors.len() != rhs.factors.len() {
            return Err(Error::FactorMismatch {
                left: self.factors.len(),
                right: rhs.factors.len(),
            });
        }
        let mut sign = 1i8;
        let factors = self
            .factors
            .iter()
            .zip(&rhs.factors)
            .map(|(x, y)| {
                let (s, z) = x.product(*y);
                sign *= s;
                z
            })
            .collect();
        Ok((sign, Blade { factors }))
    }

    pub fn square_sign(&self) -> i8 {
        self.factors.iter().map(|f| f.square_sign()).product()
    }

    /// Concatenation `self ⊗ rhs`.
    pub fn tensor(&self, rhs: &Blade) -> Blade {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&rhs.factors);
        Blade { factors }
    }

    /// All `8^m` blades in lexicographic order.
    pub fn enumerate(m: usize) -> Vec<Blade> {
        let mut out = vec![Vec::with_capacity(m)];
        for _ in 0..m {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    FactorBlade::ALL.iter().map(move |b| {
                        let mut p = prefix.clone();
                        p.push(*b);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(|factors| Blade { factors }).collect()
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, b) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_squares_and_anticommutation() {
        for g in [FactorBlade::G1, FactorBlade::G2, FactorBlade::G3] {
            assert_eq!(g.product(g), (1, FactorBlade::ONE));
        }
        assert_eq!(FactorBlade::G2.product(FactorBlade::G1), (-1, FactorBlade::G12));
        assert_eq!(FactorBlade::G1.product(FactorBlade::G2), (1, FactorBlade::G12));
        assert_eq!(FactorBlade::G12.product(FactorBlade::G23), (1, FactorBlade::G13));
    }

    #[test]
    fn square_signs() {
        let signs: Vec<i8> = FactorBlade::ALL.iter().map(|b| b.square_sign()).collect();
        // 1, g1, g2, g12, g3, g13, g23, g123
        assert_eq!(signs, vec![1, 1, 1, -1, 1, -1, -1, -1]);
    }

    #[test]
    fn word_canonicalization() {
        assert_eq!(FactorBlade::from_word(&[3, 1]).unwrap(), (-1, FactorBlade::G13));
        assert_eq!(FactorBlade::from_word(&[2, 1, 3]).unwrap(), (-1, FactorBlade::G123));
        assert_eq!(FactorBlade::from_word(&[3, 2, 1]).unwrap(), (-1, FactorBlade::G123));
        assert!(FactorBlade::from_word(&[4]).is_err());
    }

    #[test]
    fn associativity_exhaustive() {
        for &x in &FactorBlade::ALL {
            for &y in &FactorBlade::ALL {
                for &z in &FactorBlade::ALL {
                    let (s1, xy) = x.product(y);
                    let (s2, left) = xy.product(z);
                    let (s3, yz) = y.product(z);
                    let (s4, right) = x.product(yz);
                    assert_eq!((s1 * s2, left), (s3 * s4, right));
                }
            }
        }
    }

    #[test]
    fn blade_products() {
        use FactorBlade as F;
        let b = |v: &[F]| Blade::new(v.to_vec()).unwrap();
        assert_eq!(
            b(&[F::G3, F::G3, F::ONE]).product(&b(&[F::G3, F::G3, F::ONE])).unwrap(),
            (1, b(&[F::ONE, F::ONE, F::ONE]))
        );
        assert_eq!(
            b(&[F::G1, F::G1]).product(&b(&[F::G12, F::G12])).unwrap(),
            (1, b(&[F::G2, F::G2]))
        );
        assert_eq!(
            b(&[F::G3, F::ONE, F::G3]).product(&b(&[F::ONE, F::G3, F::G3])).unwrap(),
            (1, b(&[F::G3, F::G3, F::ONE]))
        );
        assert!(matches!(
            b(&[F::G1]).product(&b(&[F::G1, F::G1])),
            Err(Error::FactorMismatch { .. })
        ));
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(Blade::enumerate(1).len(), 8);
        assert_eq!(Blade::enumerate(2).len(), 64);
        let e = Blade::enumerate(2);
        assert!(e.windows(2).all(|w| w[0] < w[1]));
        assert!(e[0].is_identity());
    }
}
