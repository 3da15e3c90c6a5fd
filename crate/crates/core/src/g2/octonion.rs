use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Octonion over the ordered basis `(1, i, j, k, l, li, lj, lk)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Octonion(pub [BigRational; 8]);

impl Octonion {
    pub fn zero() -> Self {
        Octonion(core::array::from_fn(|_| BigRational::zero()))
    }

    pub fn one() -> Self {
        Octonion::basis(0)
    }

    /// The `index`-th element of `(1, i, j, k, l, li, lj, lk)`.
    pub fn basis(index: usize) -> Self {
        let mut o = Octonion::zero();
        o.0[index] = BigRational::one();
        o
    }

    pub fn from_integers(c: [i64; 8]) -> Self {
        Octonion(c.map(rat))
    }

    pub fn conjugate(&self) -> Self {
        Octonion(core::array::from_fn(|i| if i == 0 { self.0[0].clone() } else { -self.0[i].clone() }))
    }

    pub fn norm_squared(&self) -> BigRational {
        self.0.iter().map(|c| c * c).fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn real(&self) -> BigRational {
        self.0[0].clone()
    }

    fn halves(&self) -> (Quaternion, Quaternion) {
        let a = Quaternion(core::array::from_fn(|i| self.0[i].clone()));
        let b = Quaternion(core::array::from_fn(|i| self.0[i + 4].clone()));
        (a, b)
    }

    fn from_halves(a: Quaternion, b: Quaternion) -> Self {
        let [a0, a1, a2, a3] = a.0;
        let [b0, b1, b2, b3] = b.0;
        Octonion([a0, a1, a2, a3, b0, b1, b2, b3])
    }
}

impl Mul for &Octonion {
    type Output = Octonion;

    /// Doubling rule `(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))`.
    fn mul(self, rhs: &Octonion) -> Octonion {
        let (a, b) = self.halves();
        let (c, d) = rhs.halves();
        let first = &(&a * &c) - &(&d.conjugate() * &b);
        let second = &(&d * &a) + &(&b * &c.conjugate());
        Octonion::from_halves(first, second)
    }
}

impl Add for &Octonion {
    type Output = Octonion;

    fn add(self, rhs: &Octonion) -> Octonion {
        Octonion(core::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Quaternion([BigRational; 4]);

impl Quaternion {
    fn conjugate(&self) -> Self {
        Quaternion(core::array::from_fn(|i| if i == 0 { self.0[0].clone() } else { -self.0[i].clone() }))
    }
}

impl Mul for &Quaternion {
    type Output = Quaternion;

    fn mul(self, rhs: &Quaternion) -> Quaternion {
        let [a0, a1, a2, a3] = &self.0;
        let [b0, b1, b2, b3] = &rhs.0;
        Quaternion([
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ])
    }
}

impl Add for &Quaternion {
    type Output = Quaternion;

    fn add(self, rhs: &Quaternion) -> Quaternion {
        Quaternion(core::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl Sub for &Quaternion {
    type Output = Quaternion;

    fn sub(self, rhs: &Quaternion) -> Quaternion {
        Quaternion(core::array::from_fn(|i| &self.0[i] - &rhs.0[i]))
    }
}

/// Signs placing `e1 … e7` on the coordinate slots `i, j, k, l, li, lj, lk`,
/// where slot `li` holds the pair `(0, i)`. In products this reads
/// `e5 = -(l·i)`, `e6 = -(l·j)`, `e7 = l·k`. With these, the cross product
/// below reproduces the standard seven-term 3-form.
pub const IMAGINARY_SIGNS: [i64; 7] = [1, 1, 1, 1, 1, 1, -1];

/// A vector of `R^7 = Im(O)` over `e1 … e7`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector7(pub [BigRational; 7]);

impl Vector7 {
    pub fn zero() -> Self {
        Vector7(core::array::from_fn(|_| BigRational::zero()))
    }

    /// `e_k` for `k` in `1..=7`.
    pub fn e(k: usize) -> Self {
        assert!((1..=7).contains(&k), "basis index {k} outside 1..=7");
        let mut v = Vector7::zero();
        v.0[k - 1] = BigRational::one();
        v
    }

    pub fn from_integers(c: [i64; 7]) -> Self {
        Vector7(c.map(rat))
    }

    pub fn dot(&self, other: &Vector7) -> BigRational {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn norm_squared(&self) -> BigRational {
        self.dot(self)
    }

    pub fn scale(&self, k: &BigRational) -> Vector7 {
        Vector7(core::array::from_fn(|i| &self.0[i] * k))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_octonion(&self) -> Octonion {
        let mut o = Octonion::zero();
        for (i, c) in self.0.iter().enumerate() {
            o.0[i + 1] = c * rat(IMAGINARY_SIGNS[i]);
        }
        o
    }

    /// Imaginary part of an octonion in the `e1 … e7` coordinates.
    pub fn imaginary_part(o: &Octonion) -> Vector7 {
        Vector7(core::array::from_fn(|i| &o.0[i + 1] * rat(IMAGINARY_SIGNS[i])))
    }

    /// `u × v = Im(conj(v) · u)`.
    pub fn cross(&self, other: &Vector7) -> Vector7 {
        Vector7::imaginary_part(&(&other.to_octonion().conjugate() * &self.to_octonion()))
    }

    pub fn to_f64(&self) -> [f64; 7] {
        use num_traits::ToPrimitive;
        core::array::from_fn(|i| self.0[i].to_f64().unwrap_or(f64::NAN))
    }
}

impl Add for &Vector7 {
    type Output = Vector7;

    fn add(self, rhs: &Vector7) -> Vector7 {
        Vector7(core::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl Sub for &Vector7 {
    type Output = Vector7;

    fn sub(self, rhs: &Vector7) -> Vector7 {
        Vector7(core::array::from_fn(|i| &self.0[i] - &rhs.0[i]))
    }
}

impl Neg for &Vector7 {
    type Output = Vector7;

    fn neg(self) -> Vector7 {
        Vector7(core::array::from_fn(|i| -self.0[i].clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_and_quaternions() {
        let x = Octonion::from_integers([3, -1, 4, 1, -5, 9, 2, -6]);
        assert_eq!(&Octonion::one() * &x, x);
        assert_eq!(&x * &Octonion::one(), x);
        // i j = k
        assert_eq!(&Octonion::basis(1) * &Octonion::basis(2), Octonion::basis(3));
        // (0, 1)(i, 0) = (0·i - 0·1, 0·0 + 1·conj(i)) = (0, -i)
        let li = &Octonion::basis(4) * &Octonion::basis(1);
        assert_eq!(li, Octonion::from_integers([0, 0, 0, 0, 0, -1, 0, 0]));
        // (i, 0)(0, 1) = (0, i)
        assert_eq!(&Octonion::basis(1) * &Octonion::basis(4), Octonion::basis(5));
    }

    #[test]
    fn conjugate_product_is_norm() {
        let x = Octonion::from_integers([1, 2, -3, 0, 5, -1, 1, 2]);
        let n = &x * &x.conjugate();
        assert_eq!(n, {
            let mut o = Octonion::zero();
            o.0[0] = x.norm_squared();
            o
        });
    }

    #[test]
    fn imaginary_units_square_to_minus_one() {
        for k in 1..=7 {
            let e = Vector7::e(k).to_octonion();
            let sq = &e * &e;
            assert_eq!(sq.real(), rat(-1));
            assert!(Vector7::imaginary_part(&sq).is_zero());
        }
    }

    #[test]
    fn cross_is_antisymmetric_and_orthogonal() {
        let u = Vector7::from_integers([1, 0, 2, -1, 3, 0, 1]);
        let v = Vector7::from_integers([0, 4, -1, 1, 0, 2, -2]);
        let w = u.cross(&v);
        assert_eq!(w, -&v.cross(&u));
        assert!(w.dot(&u).is_zero());
        assert!(w.dot(&v).is_zero());
        assert!(u.cross(&u).is_zero());
    }
}
