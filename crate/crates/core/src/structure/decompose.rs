//! Splitting an independent set into type-1, type-2 and type-3 groups with
//! pairwise disjoint supports.
//!
//! * type 1: at least three vertices that all contain one fixed pair `{i, j}`;
//! * type 2: at least two vertices inside one 4-element set;
//! * type 3: pairwise disjoint vertices.
//!
//! In an independent set two vertices meet in 0 or 2 elements, so the groups are
//! the components of the "meet in two elements" relation. [`decompose`] builds
//! them greedily (type 1, then type 2, then the rest as type 3) and checks the
//! result with [`validate_decomposition`].

use std::collections::BTreeMap;

use crate::graph::{Vertex, VertexSet};
use crate::structure::independent::IndependentSet;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKind {
    Type1,
    Type2,
    Type3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedGroup {
    pub kind: GroupKind,
    pub members: VertexSet,
    /// Sorted union of the member triples.
    pub support: Vec<usize>,
}

impl TypedGroup {
    pub fn new(kind: GroupKind, members: VertexSet) -> Self {
        let support = members.support();
        Self {
            kind,
            members,
            support,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Checks the membership predicate of `kind` and the cached support.
    pub fn check(&self) -> std::result::Result<(), String> {
        if self.support != self.members.support() {
            return Err("support is not the union of member triples".into());
        }
        let vs = self.members.to_vec();
        match self.kind {
            GroupKind::Type1 => {
                if vs.len() < 3 {
                    return Err(format!("type-1 group has {} < 3 members", vs.len()));
                }
                let shared = self
                    .support
                    .iter()
                    .filter(|&&e| vs.iter().all(|v| v.contains(e)))
                    .count();
                if shared < 2 {
                    return Err("type-1 group members share no common pair".into());
                }
            }
            GroupKind::Type2 => {
                if vs.len() < 2 {
                    return Err(format!("type-2 group has {} < 2 members", vs.len()));
                }
                if self.support.len() > 4 {
                    return Err(format!(
                        "type-2 group support has {} > 4 elements",
                        self.support.len()
                    ));
                }
            }
            GroupKind::Type3 => {
                if vs.is_empty() {
                    return Err("empty type-3 group".into());
                }
                if self.support.len() != 3 * vs.len() {
                    return Err("type-3 group members are not pairwise disjoint".into());
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub groups: Vec<TypedGroup>,
}

impl Decomposition {
    pub fn groups_of(&self, kind: GroupKind) -> impl Iterator<Item = &TypedGroup> {
        self.groups.iter().filter(move |g| g.kind == kind)
    }

    /// Union of the supports of all type-1 and type-3 groups.
    pub fn star_support(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .groups
            .iter()
            .filter(|g| g.kind != GroupKind::Type2)
            .flat_map(|g| g.support.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

/// Decomposes an independent set: maximal type-1 groups first (kernel pairs in
/// lexicographic order), then type-2 groups by lexicographic 4-set, then one
/// type-3 group holding every remaining vertex.
pub fn decompose(u: &IndependentSet) -> Result<Decomposition> {
    let set = u.members();
    let n = set.n();
    let mut remaining: Vec<Vertex> = set.to_vec();
    let mut groups = Vec::new();

    // type 1: a pair contained in at least three remaining vertices
    loop {
        let mut by_pair: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for v in &remaining {
            for p in v.pairs() {
                *by_pair.entry(p).or_default() += 1;
            }
        }
        let Some((&(i, j), _)) = by_pair.iter().find(|(_, &c)| c >= 3) else {
            break;
        };
        let (members, rest): (Vec<_>, Vec<_>) = remaining
            .into_iter()
            .partition(|v| v.contains(i) && v.contains(j));
        remaining = rest;
        groups.push(TypedGroup::new(
            GroupKind::Type1,
            VertexSet::from_vertices(n, members)?,
        ));
    }

    // type 2: 4-sets spanned by two remaining vertices meeting in two elements
    let mut quads: Vec<[usize; 4]> = Vec::new();
    for (a, x) in remaining.iter().enumerate() {
        for y in &remaining[a + 1..] {
            if x.meet(y) == 2 {
                let mut q: Vec<usize> = x.elements().into_iter().chain(y.elements()).collect();
                q.sort_unstable();
                q.dedup();
                quads.push([q[0], q[1], q[2], q[3]]);
            }
        }
    }
    quads.sort_unstable();
    quads.dedup();
    for q in quads {
        let inside = |v: &Vertex| v.elements().iter().all(|e| q.contains(e));
        if remaining.iter().filter(|v| inside(v)).count() < 2 {
            continue;
        }
        let (members, rest): (Vec<_>, Vec<_>) = remaining.into_iter().partition(inside);
        remaining = rest;
        groups.push(TypedGroup::new(
            GroupKind::Type2,
            VertexSet::from_vertices(n, members)?,
        ));
    }

    if !remaining.is_empty() {
        groups.push(TypedGroup::new(
            GroupKind::Type3,
            VertexSet::from_vertices(n, remaining)?,
        ));
    }

    let decomposition = Decomposition { groups };
    validate_decomposition(set, &decomposition).map_err(Error::InvalidDecomposition)?;
    Ok(decomposition)
}

/// Checks that the groups partition `u`, that each group satisfies its type
/// predicate, and that supports of distinct groups are disjoint.
pub fn validate_decomposition(u: &VertexSet, d: &Decomposition) -> std::result::Result<(), String> {
    let mut covered = VertexSet::empty(u.n());
    let mut owner = vec![usize::MAX; u.n() + 1];
    for (gi, g) in d.groups.iter().enumerate() {
        if g.members.n() != u.n() {
            return Err(format!("group {gi} lives over a different ground set"));
        }
        g.check().map_err(|e| format!("group {gi}: {e}"))?;
        if !covered.is_disjoint(&g.members) {
            return Err(format!("group {gi} overlaps an earlier group"));
        }
        covered = covered.union(&g.members).map_err(|e| e.to_string())?;
        for &e in &g.support {
            if owner[e] != usize::MAX {
                return Err(format!(
                    "element {e} lies in the supports of groups {} and {gi}",
                    owner[e]
                ));
            }
            owner[e] = gi;
        }
    }
    if &covered != u {
        return Err("groups do not cover the set exactly".into());
    }
    Ok(())
}

/// Type-2 groups: full with four vertices, incomplete with three, and
/// degenerate with two (admitted by the `|W| >= 2` definition only).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Type2Class {
    Full,
    Incomplete,
    Degenerate,
}

pub fn classify_type2(group: &TypedGroup) -> Result<Type2Class> {
    if group.kind != GroupKind::Type2 {
        return Err(Error::WrongGroupKind);
    }
    Ok(match group.len() {
        4 => Type2Class::Full,
        3 => Type2Class::Incomplete,
        _ => Type2Class::Degenerate,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementClass {
    Full,
    Incomplete,
}

/// An element of a type-2 support is full when it lies in three member triples.
pub fn classify_element(e: usize, group: &TypedGroup) -> Result<ElementClass> {
    if group.kind != GroupKind::Type2 {
        return Err(Error::WrongGroupKind);
    }
    if !group.support.contains(&e) {
        return Err(Error::NotInSupport(e));
    }
    let hits = group.members.iter().filter(|v| v.contains(e)).count();
    Ok(if hits == 3 {
        ElementClass::Full
    } else {
        ElementClass::Incomplete
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn indep(n: usize, t: &[[usize; 3]]) -> IndependentSet {
        IndependentSet::new(VertexSet::from_triples(n, t).unwrap()).unwrap()
    }

    #[test]
    fn single_type1() {
        let d = decompose(&indep(6, &[[1, 2, 3], [1, 2, 4], [1, 2, 5]])).unwrap();
        assert_eq!(d.groups.len(), 1);
        assert_eq!(d.groups[0].kind, GroupKind::Type1);
        assert_eq!(d.groups[0].support, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn single_full_type2() {
        let d = decompose(&indep(6, &[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]])).unwrap();
        assert_eq!(d.groups.len(), 1);
        assert_eq!(d.groups[0].kind, GroupKind::Type2);
        assert_eq!(classify_type2(&d.groups[0]).unwrap(), Type2Class::Full);
        assert_eq!(d.groups[0].support, vec![1, 2, 3, 4]);
    }

    #[test]
    fn single_type3() {
        let d = decompose(&indep(9, &[[1, 2, 3], [4, 5, 6], [7, 8, 9]])).unwrap();
        assert_eq!(d.groups.len(), 1);
        assert_eq!(d.groups[0].kind, GroupKind::Type3);
        assert_eq!(d.groups[0].len(), 3);
    }

    #[test]
    fn mixed_groups() {
        let d = decompose(&indep(
            14,
            &[
                [1, 2, 3],
                [1, 2, 4],
                [1, 2, 5],
                [6, 7, 8],
                [6, 7, 9],
                [10, 11, 12],
            ],
        ))
        .unwrap();
        let kinds: Vec<_> = d.groups.iter().map(|g| (g.kind, g.len())).collect();
        assert_eq!(
            kinds,
            vec![
                (GroupKind::Type1, 3),
                (GroupKind::Type2, 2),
                (GroupKind::Type3, 1)
            ]
        );
        assert_eq!(
            classify_type2(&d.groups[1]).unwrap(),
            Type2Class::Degenerate
        );
        assert_eq!(d.star_support(), vec![1, 2, 3, 4, 5, 10, 11, 12]);
    }

    #[test]
    fn rejects_dependent_input() {
        let set = VertexSet::from_triples(6, &[[1, 2, 3], [1, 4, 5]]).unwrap();
        assert_eq!(IndependentSet::new(set), Err(Error::NotIndependent));
    }

    #[test]
    fn validator_catches_tampering() {
        let u = indep(9, &[[1, 2, 3], [4, 5, 6], [7, 8, 9]]);
        let mut d = decompose(&u).unwrap();
        d.groups[0].kind = GroupKind::Type1;
        assert!(validate_decomposition(u.members(), &d).is_err());
        let split = Decomposition {
            groups: vec![
                TypedGroup::new(
                    GroupKind::Type3,
                    VertexSet::from_triples(9, &[[1, 2, 3]]).unwrap(),
                ),
                TypedGroup::new(
                    GroupKind::Type3,
                    VertexSet::from_triples(9, &[[4, 5, 6]]).unwrap(),
                ),
            ],
        };
        assert!(validate_decomposition(u.members(), &split).is_err());
    }

    #[test]
    fn type2_classes() {
        let g = |t: &[[usize; 3]]| {
            TypedGroup::new(GroupKind::Type2, VertexSet::from_triples(6, t).unwrap())
        };
        assert_eq!(
            classify_type2(&g(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]])).unwrap(),
            Type2Class::Full
        );
        assert_eq!(
            classify_type2(&g(&[[1, 2, 3], [1, 2, 4], [1, 3, 4]])).unwrap(),
            Type2Class::Incomplete
        );
        assert_eq!(
            classify_type2(&g(&[[1, 2, 3], [1, 2, 4]])).unwrap(),
            Type2Class::Degenerate
        );
        let t1 = TypedGroup::new(
            GroupKind::Type1,
            VertexSet::from_triples(6, &[[1, 2, 3]]).unwrap(),
        );
        assert_eq!(classify_type2(&t1), Err(Error::WrongGroupKind));
    }

    #[test]
    fn element_classes() {
        let g = |t: &[[usize; 3]]| {
            TypedGroup::new(GroupKind::Type2, VertexSet::from_triples(6, t).unwrap())
        };
        let inc = g(&[[1, 2, 3], [1, 2, 4], [1, 3, 4]]);
        assert_eq!(classify_element(1, &inc).unwrap(), ElementClass::Full);
        assert_eq!(classify_element(2, &inc).unwrap(), ElementClass::Incomplete);
        assert_eq!(classify_element(5, &inc), Err(Error::NotInSupport(5)));
        let full = g(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]);
        assert_eq!(classify_element(1, &full).unwrap(), ElementClass::Full);
    }
}
