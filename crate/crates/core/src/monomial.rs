//! Monomials `T(n,m) = Tⁿ T*ᵐ` in the shift generator `T`. Every element of
//! the dense subalgebra is a finite linear combination of these, and the
//! product of two monomials is again a monomial, so no normal-form rewriting
//! is ever needed beyond this one rule.

use std::fmt;

/// `T(n,m) = Tⁿ T*ᵐ` with `n, m ≥ 0`. `T(0,0)` is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub n: u64,
    pub m: u64,
}

impl Monomial {
    pub const IDENTITY: Monomial = Monomial { n: 0, m: 0 };

    pub fn new(n: u64, m: u64) -> Self {
        Self { n, m }
    }

    /// `T(n,m)·T(k,l)`: the inner `T*ᵐ Tᵏ` collapses to a single surviving
    /// power, `T^(k-m)` if `k ≥ m` or `T*^(m-k)` otherwise.
    pub fn mul(self, rhs: Monomial) -> Monomial {
        let (m, k) = (self.m, rhs.n);
        Monomial {
            n: self.n + k.saturating_sub(m),
            m: rhs.m + m.saturating_sub(k),
        }
    }

    /// Fredholm index `m − n`: minus the winding of the unitary symbol.
    pub fn index(self) -> i64 {
        self.m as i64 - self.n as i64
    }

    /// Adjoint: `T(n,m)* = T(m,n)`. Also the antipode on generators.
    pub fn swap(self) -> Monomial {
        Monomial {
            n: self.m,
            m: self.n,
        }
    }

    pub fn is_diagonal(self) -> bool {
        self.n == self.m
    }

    /// Action on the basis vector `e_j` of one-sided sequence space:
    /// `e_{j−m+n}` when `j ≥ m`, annihilated otherwise.
    pub fn apply(self, j: u64) -> Option<u64> {
        if j >= self.m {
            Some(j - self.m + self.n)
        } else {
            None
        }
    }

    pub fn max_entry(self) -> u64 {
        self.n.max(self.m)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.n, self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: u64, m: u64) -> Monomial {
        Monomial::new(n, m)
    }

    #[test]
    fn product_cases() {
        // T*T = I, TT* stays a projection-generating monomial.
        assert_eq!(t(0, 1).mul(t(1, 0)), t(0, 0));
        assert_eq!(t(1, 0).mul(t(0, 1)), t(1, 1));
        // Middle powers cancel partially in both directions.
        assert_eq!(t(2, 3).mul(t(1, 4)), t(2, 6));
        assert_eq!(t(2, 3).mul(t(5, 1)), t(4, 1));
        assert_eq!(t(2, 3).mul(t(3, 1)), t(2, 1));
    }

    #[test]
    fn inverse_semigroup_law() {
        for n in 0..6u64 {
            for m in 0..6u64 {
                let a = t(n, m);
                assert_eq!(a.mul(a.swap()).mul(a), a);
            }
        }
    }

    #[test]
    fn index_is_additive() {
        for a in [t(0, 1), t(3, 0), t(2, 5), t(4, 4)] {
            for b in [t(1, 1), t(0, 3), t(6, 2)] {
                assert_eq!(a.mul(b).index(), a.index() + b.index());
            }
        }
    }

    #[test]
    fn basis_action() {
        assert_eq!(t(2, 1).apply(0), None);
        assert_eq!(t(2, 1).apply(1), Some(2));
        assert_eq!(t(2, 1).apply(5), Some(6));
        assert_eq!(t(0, 0).apply(7), Some(7));
    }
}
