use super::finite_group::FiniteGroup;
use super::perm::Perm;
use crate::error::{Error, Result};

/// A tuple of pairwise commuting group elements together with their orders.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CommutingTuple {
    entries: Vec<Perm>,
    orders: Vec<u32>,
}

impl CommutingTuple {
    pub fn new(group: &FiniteGroup, entries: Vec<Perm>) -> Result<Self> {
        let idx = entries
            .iter()
            .map(|p| group.index_of(p).ok_or(Error::NotAMember))
            .collect::<Result<Vec<_>>>()?;
        for (i, &a) in idx.iter().enumerate() {
            for &b in &idx[i + 1..] {
                if !group.commute(a, b) {
                    return Err(Error::NotCommuting);
                }
            }
        }
        Ok(Self::from_indices_unchecked(group, &idx))
    }

    pub(crate) fn from_indices_unchecked(group: &FiniteGroup, idx: &[usize]) -> Self {
        CommutingTuple {
            entries: idx.iter().map(|&i| group.element(i).clone()).collect(),
            orders: idx.iter().map(|&i| group.element_order(i)).collect(),
        }
    }

    pub fn identity(degree: usize, n: usize) -> Self {
        CommutingTuple {
            entries: vec![Perm::identity(degree); n],
            orders: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Perm] {
        &self.entries
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(Perm::is_identity)
    }

    pub fn indices_in(&self, group: &FiniteGroup) -> Result<Vec<usize>> {
        self.entries
            .iter()
            .map(|p| group.index_of(p).ok_or(Error::NotAMember))
            .collect()
    }

    pub fn images(&self) -> Vec<Vec<usize>> {
        self.entries.iter().map(Perm::images).collect()
    }
}

/// One representative per simultaneous-conjugacy orbit of pairwise commuting
/// `n`-tuples; each representative is the lexicographic minimum of its orbit
/// and the list is sorted.
///
/// A tuple is the orbit minimum only if each prefix is, so the search extends
/// minimal prefixes by elements of their centralizer and keeps an extension
/// when no element of that centralizer conjugates it lower.
pub fn commuting_tuples(group: &FiniteGroup, n: usize) -> Vec<CommutingTuple> {
    assert!(n >= 1, "tuple length must be positive");
    let mut out = Vec::new();
    let all: Vec<usize> = (0..group.order()).collect();
    let mut prefix = Vec::with_capacity(n);
    extend_minimal(group, n, &all, &mut prefix, &mut out);
    out
}

fn extend_minimal(
    group: &FiniteGroup,
    n: usize,
    centralizer: &[usize],
    prefix: &mut Vec<usize>,
    out: &mut Vec<CommutingTuple>,
) {
    if prefix.len() == n {
        out.push(CommutingTuple::from_indices_unchecked(group, prefix));
        return;
    }
    for &s in centralizer {
        // `centralizer` fixes the prefix, so only the new entry can move
        let minimal = centralizer.iter().all(|&g| group.conj(s, g) >= s);
        if !minimal {
            continue;
        }
        prefix.push(s);
        let next: Vec<usize> = centralizer
            .iter()
            .copied()
            .filter(|&g| group.commute(g, s))
            .collect();
        extend_minimal(group, n, &next, prefix, out);
        prefix.pop();
    }
}

/// `C_G(σ)`: elements commuting with every entry of the tuple.
pub fn centralizer(group: &FiniteGroup, sigma: &CommutingTuple) -> Result<FiniteGroup> {
    let idx = sigma.indices_in(group)?;
    Ok(group.centralizer_of(&idx))
}

/// `{g : σ_i g = g σ′_i for all i}` as element indices of `group`.
pub fn transporter(
    group: &FiniteGroup,
    sigma: &CommutingTuple,
    sigma2: &CommutingTuple,
) -> Result<Vec<usize>> {
    if sigma.len() != sigma2.len() {
        return Err(Error::ArityMismatch {
            expected: sigma.len(),
            found: sigma2.len(),
        });
    }
    let a = sigma.indices_in(group)?;
    let b = sigma2.indices_in(group)?;
    Ok((0..group.order())
        .filter(|&g| {
            a.iter()
                .zip(&b)
                .all(|(&s, &t)| group.mul(s, g) == group.mul(g, t))
        })
        .collect())
}

/// The orbit minimum of a tuple of element indices under simultaneous
/// conjugation, and the smallest `g` with `g⁻¹ σ g` equal to it.
pub fn canonical_form(group: &FiniteGroup, tuple: &[usize]) -> (Vec<usize>, usize) {
    let mut best = tuple.to_vec();
    let mut witness = FiniteGroup::IDENTITY;
    for g in 1..group.order() {
        let conj: Vec<usize> = tuple.iter().map(|&s| group.conj(s, g)).collect();
        if conj < best {
            best = conj;
            witness = g;
        }
    }
    (best, witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_generators(
            3,
            vec![
                Perm::from_cycles(3, &[&[0, 1]]).unwrap(),
                Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
            ],
        )
        .unwrap()
    }

    fn tuple(g: &FiniteGroup, cycles: &[&[&[usize]]]) -> CommutingTuple {
        let entries = cycles
            .iter()
            .map(|c| Perm::from_cycles(g.degree(), c).unwrap())
            .collect();
        CommutingTuple::new(g, entries).unwrap()
    }

    #[test]
    fn s3_tuple_counts() {
        let g = s3();
        assert_eq!(commuting_tuples(&g, 1).len(), 3);
        assert_eq!(commuting_tuples(&g, 2).len(), 8);
    }

    #[test]
    fn trivial_group_has_one_tuple() {
        let g = FiniteGroup::trivial(2);
        for n in 1..4 {
            let t = commuting_tuples(&g, n);
            assert_eq!(t.len(), 1);
            assert!(t[0].is_identity());
        }
    }

    #[test]
    fn rejects_noncommuting_entries() {
        let g = s3();
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert!(matches!(
            CommutingTuple::new(&g, vec![a, b]),
            Err(Error::NotCommuting)
        ));
    }

    #[test]
    fn centralizer_examples() {
        let g = s3();
        assert_eq!(
            centralizer(&g, &tuple(&g, &[&[&[0, 1]]])).unwrap().order(),
            2
        );
        assert_eq!(
            centralizer(&g, &CommutingTuple::identity(3, 2))
                .unwrap()
                .order(),
            6
        );
        let c = tuple(&g, &[&[&[0, 1, 2]], &[&[0, 1, 2]]]);
        assert_eq!(centralizer(&g, &c).unwrap().order(), 3);
    }

    #[test]
    fn transporter_examples() {
        let g = s3();
        let s01 = tuple(&g, &[&[&[0, 1]]]);
        let s02 = tuple(&g, &[&[&[0, 2]]]);
        let c3 = tuple(&g, &[&[&[0, 1, 2]]]);
        assert_eq!(transporter(&g, &s01, &s02).unwrap().len(), 2);
        assert!(transporter(&g, &s01, &c3).unwrap().is_empty());
        let same = transporter(&g, &s01, &s01).unwrap();
        assert_eq!(same, g.centralizer_indices(&s01.indices_in(&g).unwrap()));
    }

    #[test]
    fn canonical_form_witness_conjugates() {
        let g = s3();
        let s12 = g
            .index_of(&Perm::from_cycles(3, &[&[1, 2]]).unwrap())
            .unwrap();
        let (rep, w) = canonical_form(&g, &[s12]);
        assert_eq!(g.conj(s12, w), rep[0]);
        assert!(rep[0] <= s12);
    }
}
