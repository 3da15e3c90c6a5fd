//! Graded-commutative ring presentations and their additive content.
//!
//! A presentation is computed degree by degree: the monomials of degree `n`
//! span a free module, and the relations (times every monomial of the
//! complementary degree), the graded-commutativity relations `2·x² = 0` for
//! odd `x`, and the characteristic of the coefficients span the submodule.
//! The quotient is read off by Smith normal form.

mod polynomial;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::lattice::Lattice;
use crate::abelian::{FGAbelianGroup, IntegerMatrix};

pub use polynomial::{parse_polynomial, Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("relation `{0}` is not homogeneous")]
    NotHomogeneous(String),
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("generator `{0}` has degree 0")]
    DegreeZero(String),
    #[error("generator `{0}` is declared twice")]
    DuplicateGenerator(String),
    #[error("image of `{generator}` has degree {found}, expected {expected}")]
    DegreeMismatch {
        generator: String,
        expected: usize,
        found: usize,
    },
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
    #[error("presentations have {source_summands} and {target_summands} summands")]
    SummandMismatch {
        source_summands: usize,
        target_summands: usize,
    },
    #[error("unsupported coefficient ring `{0}`")]
    Coefficients(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    /// `Z/n` with `n ≥ 2`.
    Modular(u32),
}

impl Coefficients {
    pub fn parse(tag: &str) -> Result<Self, RingError> {
        match tag {
            "Z" => Ok(Coefficients::Integers),
            _ => tag
                .strip_prefix('Z')
                .and_then(|n| n.parse::<u32>().ok())
                .filter(|&n| n >= 2)
                .map(Coefficients::Modular)
                .ok_or_else(|| RingError::Coefficients(tag.to_string())),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Coefficients::Integers => "Z".into(),
            Coefficients::Modular(n) => alloc::format!("Z{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: usize) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }
}

/// `coefficients[generators] / (relations)`, graded-commutative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    coefficients: Coefficients,
    generators: Vec<Generator>,
    relations: Vec<Polynomial>,
    /// Inert remarks such as `x5 = Sq^2 x3`.
    pub annotations: Vec<String>,
}

impl RingPresentation {
    pub fn new(coefficients: Coefficients, generators: Vec<Generator>, relations: Vec<Polynomial>) -> Result<Self, RingError> {
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(RingError::DegreeZero(g.name.clone()));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(RingError::DuplicateGenerator(g.name.clone()));
            }
        }
        for r in &relations {
            r.degree(&generators)?;
        }
        Ok(RingPresentation {
            coefficients,
            generators,
            relations,
            annotations: Vec::new(),
        })
    }

    /// Builds from generator `(name, degree)` pairs and relation strings.
    pub fn parse(coefficients: Coefficients, generators: &[(&str, usize)], relations: &[&str]) -> Result<Self, RingError> {
        let gens: Vec<Generator> = generators.iter().map(|(n, d)| Generator::new(*n, *d)).collect();
        let rels = relations
            .iter()
            .map(|r| parse_polynomial(r, &gens))
            .collect::<Result<Vec<_>, _>>()?;
        RingPresentation::new(coefficients, gens, rels)
    }

    /// Exterior algebra: every generator squares to zero.
    pub fn exterior(coefficients: Coefficients, generators: &[(&str, usize)], extra: &[&str]) -> Result<Self, RingError> {
        let squares: Vec<String> = generators.iter().map(|(n, _)| alloc::format!("{n}^2")).collect();
        let mut rels: Vec<&str> = squares.iter().map(String::as_str).collect();
        rels.extend_from_slice(extra);
        RingPresentation::parse(coefficients, generators, &rels)
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn parse_element(&self, text: &str) -> Result<Polynomial, RingError> {
        parse_polynomial(text, &self.generators)
    }

    /// All exponent vectors of total degree `degree`, in lexicographic order.
    pub fn monomials(&self, degree: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = alloc::vec![0u32; self.generators.len()];
        self.fill_monomials(0, degree, &mut current, &mut out);
        out
    }

    fn fill_monomials(&self, index: usize, remaining: usize, current: &mut Monomial, out: &mut Vec<Monomial>) {
        if index == self.generators.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let d = self.generators[index].degree;
        for a in 0..=remaining / d {
            current[index] = a as u32;
            self.fill_monomials(index + 1, remaining - a * d, current, out);
        }
        current[index] = 0;
    }

    /// Columns spanning the relation submodule in `degree`, as vectors over
    /// the monomial basis.
    fn relation_columns(&self, degree: usize, basis: &[Monomial]) -> Vec<Vec<BigInt>> {
        let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let to_vector = |p: &Polynomial| {
            let mut v = alloc::vec![BigInt::zero(); basis.len()];
            for (m, c) in p.terms() {
                v[index[m]] += c;
            }
            v
        };
        let mut columns = Vec::new();
        for r in &self.relations {
            let Some(e) = r.degree(&self.generators).expect("checked at construction") else {
                continue;
            };
            if e > degree {
                continue;
            }
            for m in self.monomials(degree - e) {
                let p = Polynomial::term(BigInt::from(1), m).mul(r, &self.generators);
                if !p.is_zero() {
                    columns.push(to_vector(&p));
                }
            }
        }
        for (i, m) in basis.iter().enumerate() {
            let odd_square = m
                .iter()
                .zip(&self.generators)
                .any(|(&a, g)| a >= 2 && g.degree % 2 == 1);
            let modulus = match self.coefficients {
                Coefficients::Modular(n) => Some(BigInt::from(n)),
                Coefficients::Integers => None,
            };
            for k in [odd_square.then(|| BigInt::from(2)), modulus].into_iter().flatten() {
                let mut v = alloc::vec![BigInt::zero(); basis.len()];
                v[i] = k;
                columns.push(v);
            }
        }
        columns
    }

    /// The additive group in one degree.
    pub fn group_in_degree(&self, degree: usize) -> FGAbelianGroup {
        let basis = self.monomials(degree);
        let columns = self.relation_columns(degree, &basis);
        FGAbelianGroup::cokernel(&IntegerMatrix::from_columns(basis.len(), &columns))
    }

    /// Whether `p` is zero in the quotient.
    pub fn is_zero_element(&self, p: &Polynomial) -> Result<bool, RingError> {
        let Some(degree) = p.degree(&self.generators)? else {
            return Ok(true);
        };
        let basis = self.monomials(degree);
        let columns = self.relation_columns(degree, &basis);
        let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = alloc::vec![BigInt::zero(); basis.len()];
        for (m, c) in p.terms() {
            v[index[m]] += c;
        }
        if columns.is_empty() {
            return Ok(v.iter().all(Zero::is_zero));
        }
        let lattice = Lattice::spanned_by(&IntegerMatrix::from_columns(basis.len(), &columns));
        Ok(lattice.contains(&v))
    }
}

/// Per-degree additive groups of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedDimensionTable {
    groups: Vec<FGAbelianGroup>,
}

impl GradedDimensionTable {
    pub fn new(groups: Vec<FGAbelianGroup>) -> Self {
        GradedDimensionTable { groups }
    }

    pub fn groups(&self) -> &[FGAbelianGroup] {
        &self.groups
    }

    pub fn cutoff(&self) -> usize {
        self.groups.len().saturating_sub(1)
    }

    /// Ranks over the rationals.
    pub fn ranks(&self) -> Vec<usize> {
        self.groups.iter().map(FGAbelianGroup::rank).collect()
    }

    /// Dimensions over `Z/p` of the tabulated groups themselves.
    pub fn mod_p_ranks(&self, p: u64) -> Vec<usize> {
        self.groups.iter().map(|g| g.mod_p_rank(p)).collect()
    }
}

pub fn graded_dimensions(presentation: &RingPresentation, cutoff: usize) -> GradedDimensionTable {
    GradedDimensionTable::new((0..=cutoff).map(|n| presentation.group_in_degree(n)).collect())
}

/// A direct sum of algebras written `A ⊕ B ⊕ …`: the first summand carries
/// the unit, the others contribute their positive-degree part only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPresentation {
    summands: Vec<RingPresentation>,
}

impl SplitPresentation {
    pub fn new(summands: Vec<RingPresentation>) -> Self {
        SplitPresentation { summands }
    }

    pub fn summands(&self) -> &[RingPresentation] {
        &self.summands
    }

    pub fn graded_dimensions(&self, cutoff: usize) -> GradedDimensionTable {
        let groups = (0..=cutoff)
            .map(|n| {
                self.summands
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i == 0 || n > 0)
                    .fold(FGAbelianGroup::zero(), |acc, (_, s)| acc.direct_sum(&s.group_in_degree(n)))
            })
            .collect();
        GradedDimensionTable::new(groups)
    }
}

impl From<RingPresentation> for SplitPresentation {
    fn from(p: RingPresentation) -> Self {
        SplitPresentation::new(alloc::vec![p])
    }
}

/// Cauchy product of two rank series, truncated at `cutoff`.
pub fn series_product(a: &[usize], b: &[usize], cutoff: usize) -> Vec<usize> {
    (0..=cutoff)
        .map(|n| {
            (0..=n)
                .filter_map(|i| Some(a.get(i)? * b.get(n - i)?))
                .sum()
        })
        .collect()
}

/// Generator images and pinned values for a candidate ring homomorphism.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingMap {
    /// Generator name to its image, written in the target summand of the same
    /// position as the source summand owning the generator.
    pub images: BTreeMap<String, String>,
    /// `(source element, required image)` pairs, in the first summands.
    pub pins: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomVerdict {
    Pass,
    RelationSurvives { summand: usize, relation: String, image: String },
    PinViolated { source: String, expected: String, image: String },
}

impl HomVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, HomVerdict::Pass)
    }
}

fn substitute(p: &Polynomial, target: &RingPresentation, images: &[Polynomial]) -> Polynomial {
    let unit = Polynomial::term(BigInt::from(1), alloc::vec![0; target.generators.len()]);
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        let mut term = unit.scale(c);
        for (i, &a) in m.iter().enumerate() {
            for _ in 0..a {
                term = term.mul(&images[i], &target.generators);
            }
        }
        out = out.add(&term);
    }
    out
}

fn summand_images(
    source: &RingPresentation,
    target: &RingPresentation,
    map: &RingMap,
) -> Result<Vec<Polynomial>, RingError> {
    source
        .generators
        .iter()
        .map(|g| {
            let text = map.images.get(&g.name).ok_or_else(|| RingError::MissingImage(g.name.clone()))?;
            let image = target.parse_element(text)?;
            match image.degree(&target.generators)? {
                Some(d) if d != g.degree => Err(RingError::DegreeMismatch {
                    generator: g.name.clone(),
                    expected: g.degree,
                    found: d,
                }),
                _ => Ok(image),
            }
        })
        .collect()
}

/// Whether the generator images extend to a ring map, summand by summand,
/// and take every pinned element to its required value.
pub fn check_ring_hom(source: &SplitPresentation, target: &SplitPresentation, map: &RingMap) -> Result<HomVerdict, RingError> {
    if source.summands.len() != target.summands.len() {
        return Err(RingError::SummandMismatch {
            source_summands: source.summands.len(),
            target_summands: target.summands.len(),
        });
    }
    let mut all_images = Vec::new();
    for (k, (s, t)) in source.summands.iter().zip(&target.summands).enumerate() {
        let images = summand_images(s, t, map)?;
        for r in &s.relations {
            let image = substitute(r, t, &images);
            if !t.is_zero_element(&image)? {
                return Ok(HomVerdict::RelationSurvives {
                    summand: k,
                    relation: r.render(&s.generators),
                    image: image.render(&t.generators),
                });
            }
        }
        all_images.push(images);
    }
    for (from, to) in &map.pins {
        let k = source
            .summands
            .iter()
            .position(|s| s.parse_element(from).is_ok())
            .ok_or_else(|| RingError::Parse(from.clone()))?;
        let (s, t) = (&source.summands[k], &target.summands[k]);
        let image = substitute(&s.parse_element(from)?, t, &all_images[k]);
        let expected = t.parse_element(to)?;
        let difference = image.add(&expected.scale(&BigInt::from(-1)));
        if !t.is_zero_element(&difference)? {
            return Ok(HomVerdict::PinViolated {
                source: from.clone(),
                expected: to.clone(),
                image: image.render(&t.generators),
            });
        }
    }
    Ok(HomVerdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FGAbelianGroup {
        s.parse().unwrap()
    }

    fn table(s: &str) -> Vec<FGAbelianGroup> {
        s.split(',').map(g).collect()
    }

    #[test]
    fn polynomial_ring_counts_monomials() {
        let p = RingPresentation::parse(Coefficients::Integers, &[("a", 2), ("b", 3)], &[]).unwrap();
        // a^i b^j with b odd: b^2 is 2-torsion
        let dims = graded_dimensions(&p, 6);
        assert_eq!(dims.groups(), table("Z,0,Z,Z,Z,Z,Z+Z2").as_slice());
    }

    #[test]
    fn odd_square_is_two_torsion_unless_killed() {
        let free = RingPresentation::parse(Coefficients::Integers, &[("x3", 3)], &[]).unwrap();
        assert_eq!(free.group_in_degree(6), g("Z2"));
        let exterior = RingPresentation::exterior(Coefficients::Integers, &[("x3", 3)], &[]).unwrap();
        assert_eq!(exterior.group_in_degree(6), g("0"));
        let mod3 = RingPresentation::parse(Coefficients::Modular(3), &[("x3", 3)], &[]).unwrap();
        assert_eq!(mod3.group_in_degree(6), g("0"));
        let mod2 = RingPresentation::parse(Coefficients::Modular(2), &[("x3", 3)], &[]).unwrap();
        assert_eq!(mod2.group_in_degree(6), g("Z2"));
    }

    #[test]
    fn truncated_polynomial_ring() {
        let p = RingPresentation::parse(Coefficients::Integers, &[("d", 4)], &["d^3"]).unwrap();
        assert_eq!(graded_dimensions(&p, 12).ranks(), [1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn non_monic_relation_leaves_torsion() {
        let p = RingPresentation::parse(Coefficients::Integers, &[("x", 2)], &["3x^2"]).unwrap();
        assert_eq!(p.group_in_degree(4), g("Z3"));
        assert_eq!(p.group_in_degree(6), g("Z3"));
    }

    #[test]
    fn rejects_bad_presentations() {
        assert!(matches!(
            RingPresentation::parse(Coefficients::Integers, &[("x", 2), ("y", 3)], &["x + y"]),
            Err(RingError::NotHomogeneous(_))
        ));
        assert!(RingPresentation::parse(Coefficients::Integers, &[("x", 0)], &[]).is_err());
        assert!(RingPresentation::parse(Coefficients::Integers, &[("x", 2), ("x", 4)], &[]).is_err());
        assert!(Coefficients::parse("Q").is_err());
        assert_eq!(Coefficients::parse("Z3").unwrap(), Coefficients::Modular(3));
    }

    #[test]
    fn split_sum_drops_extra_units() {
        let free = RingPresentation::parse(Coefficients::Integers, &[("d", 4)], &["d^3"]).unwrap();
        let torsion = RingPresentation::parse(Coefficients::Modular(2), &[("c", 3)], &["c^3"]).unwrap();
        let ring = SplitPresentation::new(alloc::vec![free, torsion]);
        assert_eq!(ring.graded_dimensions(8).groups(), table("Z,0,0,Z2,Z,0,Z2,0,Z").as_slice());
    }

    #[test]
    fn series_product_is_cauchy() {
        assert_eq!(series_product(&[1, 1], &[1, 1], 3), [1, 2, 1, 0]);
        assert_eq!(series_product(&[1, 0, 2], &[1], 2), [1, 0, 2]);
    }

    #[test]
    fn zero_element_membership() {
        let p = RingPresentation::parse(Coefficients::Integers, &[("x", 4), ("y", 4)], &["x^2-y^2"]).unwrap();
        assert!(p.is_zero_element(&p.parse_element("2x^2 - 2y^2").unwrap()).unwrap());
        assert!(!p.is_zero_element(&p.parse_element("x^2 + y^2").unwrap()).unwrap());
        assert!(p.is_zero_element(&Polynomial::zero()).unwrap());
        let q = RingPresentation::parse(Coefficients::Modular(2), &[("x", 4), ("y", 4)], &[]).unwrap();
        assert!(q.is_zero_element(&q.parse_element("2xy").unwrap()).unwrap());
    }

    #[test]
    fn identity_hom_passes() {
        let p = RingPresentation::parse(Coefficients::Integers, &[("x", 4), ("y", 4)], &["x^2-y^2", "x^3"]).unwrap();
        let ring = SplitPresentation::from(p);
        let map = RingMap {
            images: [("x", "x"), ("y", "y")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            pins: Vec::new(),
        };
        assert_eq!(check_ring_hom(&ring, &ring, &map).unwrap(), HomVerdict::Pass);
    }

    #[test]
    fn hom_degree_mismatch() {
        let src = SplitPresentation::from(RingPresentation::parse(Coefficients::Integers, &[("x", 4)], &[]).unwrap());
        let dst = SplitPresentation::from(RingPresentation::parse(Coefficients::Integers, &[("c", 3)], &[]).unwrap());
        let map = RingMap {
            images: [("x".to_string(), "c".to_string())].into_iter().collect(),
            pins: Vec::new(),
        };
        assert!(matches!(check_ring_hom(&src, &dst, &map), Err(RingError::DegreeMismatch { .. })));
    }

    #[test]
    fn relation_must_die() {
        let src = SplitPresentation::from(RingPresentation::parse(Coefficients::Integers, &[("x", 2)], &["x^2"]).unwrap());
        let dst = SplitPresentation::from(RingPresentation::parse(Coefficients::Integers, &[("u", 2)], &[]).unwrap());
        let map = RingMap {
            images: [("x".to_string(), "u".to_string())].into_iter().collect(),
            pins: Vec::new(),
        };
        assert!(matches!(
            check_ring_hom(&src, &dst, &map).unwrap(),
            HomVerdict::RelationSurvives { .. }
        ));
    }
}
