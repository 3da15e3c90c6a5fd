use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::abelian::{hom_homology, FGAbelianGroup, GroupHom, IntegerMatrix};
use crate::homology::HomologyTable;

use super::SpecSeqError;

/// Bidegree `(p, q)`: base degree first, fiber degree second.
pub type Bidegree = (usize, usize);

/// A page `E^r` of a first-quadrant homological spectral sequence. Only
/// nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigradedPage {
    page: usize,
    entries: BTreeMap<Bidegree, FGAbelianGroup>,
}

impl BigradedPage {
    pub fn new(page: usize) -> Self {
        BigradedPage {
            page,
            entries: BTreeMap::new(),
        }
    }

    pub fn page_number(&self) -> usize {
        self.page
    }

    pub(crate) fn set_page_number(&mut self, r: usize) {
        self.page = r;
    }

    pub fn get(&self, at: Bidegree) -> FGAbelianGroup {
        self.entries.get(&at).cloned().unwrap_or_default()
    }

    pub fn entry(&self, at: Bidegree) -> Option<&FGAbelianGroup> {
        self.entries.get(&at)
    }

    pub fn is_nonzero(&self, at: Bidegree) -> bool {
        self.entries.contains_key(&at)
    }

    pub fn set(&mut self, at: Bidegree, g: FGAbelianGroup) {
        if g.is_zero() {
            self.entries.remove(&at);
        } else {
            self.entries.insert(at, g);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Bidegree, &FGAbelianGroup)> {
        self.entries.iter()
    }

    pub fn max_p(&self) -> usize {
        self.entries.keys().map(|&(p, _)| p).max().unwrap_or(0)
    }

    pub fn max_q(&self) -> usize {
        self.entries.keys().map(|&(_, q)| q).max().unwrap_or(0)
    }

    pub fn max_total_degree(&self) -> usize {
        self.entries.keys().map(|&(p, q)| p + q).max().unwrap_or(0)
    }

    /// Entries on the line `p + q = n`, ordered by increasing `p`, zeros
    /// included.
    pub fn diagonal(&self, n: usize) -> Vec<FGAbelianGroup> {
        (0..=n).map(|p| self.get((p, n - p))).collect()
    }

    /// Target of `d^r` from `at`, if it lies in the first quadrant.
    pub fn target(at: Bidegree, r: usize) -> Option<Bidegree> {
        let (p, q) = at;
        p.checked_sub(r).map(|p2| (p2, q + r - 1))
    }

    /// Source of the `d^r` that lands on `at`, if it lies in the first quadrant.
    pub fn source(at: Bidegree, r: usize) -> Option<Bidegree> {
        let (p, q) = at;
        (q + 1).checked_sub(r).map(|q2| (p + r, q2))
    }

    /// Text grid with row `q` printed top-down, for reports.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let (mp, mq) = (self.max_p(), self.max_q());
        for q in (0..=mq).rev() {
            out.push_str(&alloc::format!("{q:>2} |"));
            for p in 0..=mp {
                out.push_str(&alloc::format!(" {:>6}", self.get((p, q)).notation()));
            }
            out.push('\n');
        }
        out
    }
}

/// How to treat the base's fundamental group when forming `E^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseConnectivity {
    SimplyConnected,
    NotSimplyConnected,
    /// Use untwisted coefficients anyway.
    UntwistedOverride,
}

/// `E^2_{p,q} = H_p(B) ⊗ H_q(F) ⊕ Tor(H_{p-1}(B), H_q(F))`.
pub fn e2_page(
    base: &HomologyTable,
    fiber: &HomologyTable,
    connectivity: BaseConnectivity,
) -> Result<BigradedPage, SpecSeqError> {
    if connectivity == BaseConnectivity::NotSimplyConnected {
        return Err(SpecSeqError::TwistedCoefficients);
    }
    Ok(e2_from_groups(&base.groups, &fiber.groups))
}

pub(crate) fn e2_from_groups(base: &[FGAbelianGroup], fiber: &[FGAbelianGroup]) -> BigradedPage {
    let mut page = BigradedPage::new(2);
    for (p, b) in base.iter().enumerate() {
        for (q, f) in fiber.iter().enumerate() {
            let mut g = b.tensor(f);
            if p > 0 {
                g = g.direct_sum(&base[p - 1].tor(f));
            }
            page.set((p, q), g);
        }
    }
    page
}

/// The differentials `d^r` of one page, keyed by source bidegree. Missing
/// sources carry the zero map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DifferentialAssignment {
    page: usize,
    maps: BTreeMap<Bidegree, GroupHom>,
}

impl DifferentialAssignment {
    pub fn zero(page: usize) -> Self {
        DifferentialAssignment {
            page,
            maps: BTreeMap::new(),
        }
    }

    pub fn page_number(&self) -> usize {
        self.page
    }

    pub fn insert(&mut self, source: Bidegree, map: GroupHom) {
        if map.is_zero() {
            self.maps.remove(&source);
        } else {
            self.maps.insert(source, map);
        }
    }

    pub fn get(&self, source: Bidegree) -> Option<&GroupHom> {
        self.maps.get(&source)
    }

    pub fn maps(&self) -> impl Iterator<Item = (&Bidegree, &GroupHom)> {
        self.maps.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.maps.is_empty()
    }

    /// Builds homomorphisms from raw matrices against the page's groups,
    /// rejecting ill-defined ones.
    pub fn from_matrices(
        page: &BigradedPage,
        matrices: Vec<(Bidegree, IntegerMatrix)>,
    ) -> Result<Self, SpecSeqError> {
        let r = page.page_number();
        let mut d = DifferentialAssignment::zero(r);
        for (src, m) in matrices {
            let tgt = BigradedPage::target(src, r).ok_or(SpecSeqError::Bidegree { at: src, page: r })?;
            let hom = GroupHom::new(page.get(src), page.get(tgt), m)
                .map_err(|e| SpecSeqError::IllDefined { at: src, source: e })?;
            d.insert(src, hom);
        }
        Ok(d)
    }
}

/// Takes homology of `E^r` under `d^r`, giving `E^{r+1}`.
pub fn turn_page(page: &BigradedPage, d: &DifferentialAssignment) -> Result<BigradedPage, SpecSeqError> {
    let r = page.page_number();
    if d.page_number() != r {
        return Err(SpecSeqError::PageMismatch {
            page: r,
            differential: d.page_number(),
        });
    }
    for (&src, hom) in d.maps() {
        let tgt = BigradedPage::target(src, r).ok_or(SpecSeqError::Bidegree { at: src, page: r })?;
        if hom.domain() != &page.get(src) || hom.codomain() != &page.get(tgt) {
            return Err(SpecSeqError::Bidegree { at: src, page: r });
        }
    }
    let mut next = BigradedPage::new(r + 1);
    for (&at, g) in page.entries() {
        let outgoing = d.get(at);
        let incoming = BigradedPage::source(at, r).and_then(|s| d.get(s));
        let h = hom_homology(g, incoming, outgoing).map_err(|e| match e {
            crate::abelian::AbelianError::NonzeroComposite => SpecSeqError::DSquaredNonzero { at },
            other => SpecSeqError::IllDefined { at, source: other },
        })?;
        next.set(at, h);
    }
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FGAbelianGroup {
        s.parse().unwrap()
    }

    fn table(s: &str) -> HomologyTable {
        HomologyTable::new("", s.split(',').map(g).collect())
    }

    #[test]
    fn e2_with_tor_terms() {
        let base = table("Z,0,Z2,0,Z,Z2,0,0,Z");
        let fiber = table("Z,Z2,0,Z^2,Z2,0,Z");
        let e2 = e2_page(&base, &fiber, BaseConnectivity::SimplyConnected).unwrap();
        let row = |q: usize| -> Vec<FGAbelianGroup> { (0..=8).map(|p| e2.get((p, q))).collect() };
        assert_eq!(row(0), table("Z,0,Z2,0,Z,Z2,0,0,Z").groups);
        assert_eq!(row(1), table("Z2,0,Z2,Z2,Z2,Z2,Z2,0,Z2").groups);
        assert_eq!(row(3), table("Z^2,0,Z2^2,0,Z^2,Z2^2,0,0,Z^2").groups);
        assert_eq!(row(6), table("Z,0,Z2,0,Z,Z2,0,0,Z").groups);
    }

    #[test]
    fn point_fiber_reproduces_base() {
        let base = table("Z,Z2,0,Z");
        let e2 = e2_page(&base, &table("Z"), BaseConnectivity::SimplyConnected).unwrap();
        assert_eq!(e2.diagonal(1), [g("0"), g("Z2")]);
        assert_eq!(e2.max_q(), 0);
    }

    #[test]
    fn twisted_base_needs_override() {
        let base = table("Z,Z2,0,Z");
        assert!(e2_page(&base, &table("Z"), BaseConnectivity::NotSimplyConnected).is_err());
        assert!(e2_page(&base, &table("Z"), BaseConnectivity::UntwistedOverride).is_ok());
    }

    #[test]
    fn zero_differentials_fix_the_page() {
        let base = table("Z,0,Z,0,Z");
        let e2 = e2_page(&base, &table("Z,Z"), BaseConnectivity::SimplyConnected).unwrap();
        let mut e3 = turn_page(&e2, &DifferentialAssignment::zero(2)).unwrap();
        e3.set_page_number(2);
        assert_eq!(e3, e2);
    }

    #[test]
    fn doubling_differential() {
        // S^6 base, fiber rows 0 and 5, d^6 = 2 from (6,0) to (0,5)
        let mut e6 = BigradedPage::new(6);
        for at in [(0, 0), (6, 0), (0, 5), (6, 5)] {
            e6.set(at, g("Z"));
        }
        let d = DifferentialAssignment::from_matrices(&e6, alloc::vec![((6, 0), IntegerMatrix::from_rows(&[[2]]))])
            .unwrap();
        let e7 = turn_page(&e6, &d).unwrap();
        assert_eq!(e7.get((0, 5)), g("Z2"));
        assert!(e7.get((6, 0)).is_zero());
    }

    #[test]
    fn ill_defined_differential_rejected() {
        let mut e2 = BigradedPage::new(2);
        e2.set((2, 0), g("Z2"));
        e2.set((0, 1), g("Z"));
        let bad = DifferentialAssignment::from_matrices(&e2, alloc::vec![((2, 0), IntegerMatrix::from_rows(&[[1]]))]);
        assert!(matches!(bad, Err(SpecSeqError::IllDefined { .. })));
    }
}
