use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Generator, RingError};

/// Exponent vector over an ordered generator list. A monomial stands for the
/// ordered product `g_0^{a_0} g_1^{a_1} …`.
pub type Monomial = Vec<u32>;

/// Sign of `m1 · m2` after moving every factor of `m2` past the factors of
/// `m1` with larger index.
fn product_sign(generators: &[Generator], m1: &[u32], m2: &[u32]) -> bool {
    let mut odd = false;
    for (i, &a) in m1.iter().enumerate() {
        if a % 2 == 0 || generators[i].degree.is_multiple_of(2) {
            continue;
        }
        for (j, &b) in m2.iter().enumerate().take(i) {
            if b % 2 == 1 && generators[j].degree % 2 == 1 {
                odd = !odd;
            }
        }
    }
    odd
}

fn monomial_degree(generators: &[Generator], m: &[u32]) -> usize {
    m.iter().zip(generators).map(|(&a, g)| a as usize * g.degree).sum()
}

/// Integer polynomial in graded-commutative generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn term(coefficient: BigInt, monomial: Monomial) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(monomial, coefficient);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += c;
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial, generators: &[Generator]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                let c = c1 * c2;
                let c = if product_sign(generators, m1, m2) { -c } else { c };
                out.add_term(m, c);
            }
        }
        out
    }

    /// The common degree of all terms; `Ok(None)` for the zero polynomial.
    pub fn degree(&self, generators: &[Generator]) -> Result<Option<usize>, RingError> {
        let mut degrees = self.terms.keys().map(|m| monomial_degree(generators, m));
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        if degrees.any(|d| d != first) {
            return Err(RingError::NotHomogeneous(self.render(generators)));
        }
        Ok(Some(first))
    }

    pub fn render(&self, generators: &[Generator]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let body = render_monomial(generators, m);
            if c.is_negative() {
                s.push_str(if i == 0 { "-" } else { " - " });
            } else if i > 0 {
                s.push_str(" + ");
            }
            let c = c.abs();
            match (c.is_one(), body.is_empty()) {
                (true, false) => s.push_str(&body),
                (_, true) => s.push_str(&c.to_string()),
                (false, false) => {
                    let _ = write!(s, "{c}{body}");
                }
            }
        }
        s
    }
}

fn render_monomial(generators: &[Generator], m: &[u32]) -> String {
    let mut s = String::new();
    for (g, &a) in generators.iter().zip(m) {
        match a {
            0 => {}
            1 => s.push_str(&g.name),
            _ => {
                let _ = write!(s, "{}^{a}", g.name);
            }
        }
    }
    s
}

/// Parses sums of products such as `x^3 - y^3`, `2*zt + tz`, `x6 x9`.
/// Adjacent generator names are split by longest match.
pub fn parse_polynomial(text: &str, generators: &[Generator]) -> Result<Polynomial, RingError> {
    let err = || RingError::Parse(text.to_string());
    let n = generators.len();
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let mut total = Polynomial::zero();
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos == chars.len() {
            break;
        }
        let mut negative = false;
        if chars[pos] == '+' || chars[pos] == '-' {
            negative = chars[pos] == '-';
            pos += 1;
        } else if !first {
            return Err(err());
        }
        first = false;
        skip_ws(&mut pos);
        let mut term = Polynomial::term(BigInt::one(), alloc::vec![0; n]);
        let mut factors = 0;
        loop {
            skip_ws(&mut pos);
            if pos == chars.len() || chars[pos] == '+' || chars[pos] == '-' {
                break;
            }
            if chars[pos] == '*' {
                pos += 1;
                continue;
            }
            let factor = if chars[pos].is_ascii_digit() {
                let start = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits: String = chars[start..pos].iter().collect();
                Polynomial::term(digits.parse().map_err(|_| err())?, alloc::vec![0; n])
            } else {
                let rest: String = chars[pos..].iter().collect();
                let (index, gen) = generators
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| rest.starts_with(g.name.as_str()))
                    .max_by_key(|(_, g)| g.name.len())
                    .ok_or_else(err)?;
                pos += gen.name.chars().count();
                let mut power = 1u32;
                skip_ws(&mut pos);
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let start = pos;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let digits: String = chars[start..pos].iter().collect();
                    power = digits.parse().map_err(|_| err())?;
                }
                let mut single = alloc::vec![0; n];
                single[index] = 1;
                let single = Polynomial::term(BigInt::one(), single);
                let mut p = Polynomial::term(BigInt::one(), alloc::vec![0; n]);
                for _ in 0..power {
                    p = p.mul(&single, generators);
                }
                p
            };
            term = term.mul(&factor, generators);
            factors += 1;
        }
        if factors == 0 {
            return Err(err());
        }
        if negative {
            term = term.scale(&BigInt::from(-1));
        }
        total = total.add(&term);
    }
    if first {
        return Err(err());
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(spec: &[(&str, usize)]) -> Vec<Generator> {
        spec.iter().map(|(n, d)| Generator::new(*n, *d)).collect()
    }

    #[test]
    fn odd_generators_anticommute() {
        let g = gens(&[("z", 3), ("t", 7)]);
        let p = parse_polynomial("zt + tz", &g).unwrap();
        assert!(p.is_zero());
        let q = parse_polynomial("zt - tz", &g).unwrap();
        assert_eq!(q.render(&g), "2zt");
    }

    #[test]
    fn even_generators_commute() {
        let g = gens(&[("x", 4), ("y", 4)]);
        assert!(parse_polynomial("xy-yx", &g).unwrap().is_zero());
        assert_eq!(parse_polynomial("x^3 - y^3", &g).unwrap().degree(&g).unwrap(), Some(12));
    }

    #[test]
    fn longest_match_names() {
        let g = gens(&[("x", 2), ("x6", 6), ("x9", 9)]);
        let p = parse_polynomial("x6x9", &g).unwrap();
        assert_eq!(p.render(&g), "x6x9");
        assert_eq!(p.degree(&g).unwrap(), Some(15));
        assert_eq!(parse_polynomial("3*x^2 x", &g).unwrap().render(&g), "3x^3");
    }

    #[test]
    fn odd_square_sign() {
        // x·x = -x·x is only visible through the relation 2x^2 = 0, the
        // product itself keeps the sign of the exponent bookkeeping
        let g = gens(&[("a", 3), ("b", 5)]);
        let ab = parse_polynomial("ab", &g).unwrap();
        let ba = parse_polynomial("ba", &g).unwrap();
        assert_eq!(ab.add(&ba), Polynomial::zero());
        let abab = ab.mul(&ab, &g);
        assert_eq!(abab.render(&g), "-a^2b^2");
    }

    #[test]
    fn rejects_garbage() {
        let g = gens(&[("x", 4)]);
        assert!(parse_polynomial("x + q", &g).is_err());
        assert!(parse_polynomial("", &g).is_err());
        assert!(parse_polynomial("x +", &g).is_err());
        assert!(parse_polynomial("x^", &g).is_err());
    }

    #[test]
    fn inhomogeneous_detected() {
        let g = gens(&[("x", 4), ("z", 3)]);
        assert!(parse_polynomial("x + z", &g).unwrap().degree(&g).is_err());
    }
}
