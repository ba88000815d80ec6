//! Instances of the hospitals/residents problem with ties, lower quotas and
//! incomplete lists.
//!
//! Agents are addressed by dense indices: residents `0..n`, hospitals `0..m`.
//! Display names are kept only for I/O. A preference list is an ordered
//! sequence of tie groups; a group of size one is an ordinary strict entry.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

const UNRANKED: u32 = u32::MAX;

/// A resident or a hospital.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Agent {
    Resident(usize),
    Hospital(usize),
}

/// Lower and upper quota of a hospital.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Quota {
    pub lower: usize,
    pub upper: usize,
}

impl Quota {
    pub const fn new(lower: usize, upper: usize) -> Self {
        Quota { lower, upper }
    }
}

impl fmt::Display for Quota {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

/// Ranked list of opposite-side agents, possibly with ties.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PreferenceList {
    groups: Vec<Vec<usize>>,
}

impl PreferenceList {
    pub fn new(groups: Vec<Vec<usize>>) -> Self {
        PreferenceList { groups }
    }

    /// A list without ties.
    pub fn strict<I: IntoIterator<Item = usize>>(order: I) -> Self {
        PreferenceList {
            groups: order.into_iter().map(|a| vec![a]).collect(),
        }
    }

    /// A list consisting of one tie.
    pub fn single_tie<I: IntoIterator<Item = usize>>(members: I) -> Self {
        let group: Vec<usize> = members.into_iter().collect();
        if group.is_empty() {
            PreferenceList::default()
        } else {
            PreferenceList {
                groups: vec![group],
            }
        }
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// Number of listed agents.
    pub fn len(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.groups.iter().flatten().copied()
    }

    pub fn has_ties(&self) -> bool {
        self.groups.iter().any(|g| g.len() > 1)
    }
}

/// Outcome of comparing two candidates `a`, `b` in one agent's list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `a` is strictly preferred to `b`.
    Prefers,
    /// `a` and `b` share a tie group (or are the same agent).
    Indifferent,
    /// `b` is strictly preferred to `a`.
    PrefersOther,
    /// `a` is not listed but `b` is.
    FirstUnacceptable,
    /// `b` is not listed but `a` is.
    SecondUnacceptable,
    /// neither is listed.
    BothUnacceptable,
}

/// A validated, immutable instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    resident_names: Vec<String>,
    hospital_names: Vec<String>,
    resident_prefs: Vec<PreferenceList>,
    hospital_prefs: Vec<PreferenceList>,
    quotas: Vec<Quota>,
    // tie-group rank, row-major: resident_rank[r * m + h], hospital_rank[h * n + r]
    resident_rank: Vec<u32>,
    hospital_rank: Vec<u32>,
}

impl Instance {
    /// Validates and builds an instance from index-based lists.
    pub fn new(
        resident_names: Vec<String>,
        hospital_names: Vec<String>,
        resident_prefs: Vec<PreferenceList>,
        hospital_prefs: Vec<PreferenceList>,
        quotas: Vec<Quota>,
    ) -> Result<Instance> {
        let n = resident_names.len();
        let m = hospital_names.len();
        if resident_prefs.len() != n || hospital_prefs.len() != m || quotas.len() != m {
            return Err(Error::InvalidArgument(
                "names, preference lists and quotas disagree in length".into(),
            ));
        }
        check_unique(&resident_names)?;
        check_unique(&hospital_names)?;

        for (h, q) in quotas.iter().enumerate() {
            if q.upper == 0 || q.lower > q.upper || q.upper > n {
                return Err(Error::QuotaViolation {
                    hospital: hospital_names[h].clone(),
                    lower: q.lower,
                    upper: q.upper,
                    residents: n,
                });
            }
        }

        let resident_rank = rank_table(&resident_prefs, &resident_names, &hospital_names)?;
        let hospital_rank = rank_table(&hospital_prefs, &hospital_names, &resident_names)?;

        for r in 0..n {
            for h in 0..m {
                let listed_by_r = resident_rank[r * m + h] != UNRANKED;
                let listed_by_h = hospital_rank[h * n + r] != UNRANKED;
                if listed_by_r != listed_by_h {
                    return Err(Error::AsymmetricAcceptability {
                        resident: resident_names[r].clone(),
                        hospital: hospital_names[h].clone(),
                    });
                }
            }
        }

        Ok(Instance {
            resident_names,
            hospital_names,
            resident_prefs,
            hospital_prefs,
            quotas,
            resident_rank,
            hospital_rank,
        })
    }

    /// Builds an instance with generated names `r1..rn`, `h1..hm`.
    pub fn from_indexed(
        resident_prefs: Vec<PreferenceList>,
        hospitals: Vec<(Quota, PreferenceList)>,
    ) -> Result<Instance> {
        let resident_names = (1..=resident_prefs.len())
            .map(|i| format!("r{i}"))
            .collect();
        let hospital_names = (1..=hospitals.len()).map(|j| format!("h{j}")).collect();
        let (quotas, hospital_prefs) = hospitals.into_iter().unzip();
        Instance::new(
            resident_names,
            hospital_names,
            resident_prefs,
            hospital_prefs,
            quotas,
        )
    }

    pub fn empty() -> Instance {
        Instance::new(vec![], vec![], vec![], vec![], vec![]).expect("empty instance is valid")
    }

    pub fn num_residents(&self) -> usize {
        self.resident_names.len()
    }

    pub fn num_hospitals(&self) -> usize {
        self.hospital_names.len()
    }

    pub fn resident_name(&self, r: usize) -> &str {
        &self.resident_names[r]
    }

    pub fn hospital_name(&self, h: usize) -> &str {
        &self.hospital_names[h]
    }

    pub fn resident_names(&self) -> &[String] {
        &self.resident_names
    }

    pub fn hospital_names(&self) -> &[String] {
        &self.hospital_names
    }

    pub fn resident_index(&self, name: &str) -> Option<usize> {
        self.resident_names.iter().position(|n| n == name)
    }

    pub fn hospital_index(&self, name: &str) -> Option<usize> {
        self.hospital_names.iter().position(|n| n == name)
    }

    pub fn agent_name(&self, agent: Agent) -> &str {
        match agent {
            Agent::Resident(r) => self.resident_name(r),
            Agent::Hospital(h) => self.hospital_name(h),
        }
    }

    pub fn resident_prefs(&self, r: usize) -> &PreferenceList {
        &self.resident_prefs[r]
    }

    pub fn hospital_prefs(&self, h: usize) -> &PreferenceList {
        &self.hospital_prefs[h]
    }

    pub fn quota(&self, h: usize) -> Quota {
        self.quotas[h]
    }

    pub fn quotas(&self) -> &[Quota] {
        &self.quotas
    }

    /// Tie-group position of `h` in `r`'s list, `None` if unacceptable.
    #[inline]
    pub fn resident_rank(&self, r: usize, h: usize) -> Option<u32> {
        let v = self.resident_rank[r * self.num_hospitals() + h];
        (v != UNRANKED).then_some(v)
    }

    /// Tie-group position of `r` in `h`'s list, `None` if unacceptable.
    #[inline]
    pub fn hospital_rank(&self, h: usize, r: usize) -> Option<u32> {
        let v = self.hospital_rank[h * self.num_residents() + r];
        (v != UNRANKED).then_some(v)
    }

    /// Whether `(r, h)` belongs to the acceptable-pair set E.
    #[inline]
    pub fn is_acceptable(&self, r: usize, h: usize) -> bool {
        self.resident_rank(r, h).is_some()
    }

    /// All acceptable pairs ordered by resident, then hospital.
    pub fn acceptable_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.num_hospitals();
        (0..self.num_residents())
            .flat_map(|r| (0..m).map(move |h| (r, h)))
            .filter(|&(r, h)| self.is_acceptable(r, h))
            .collect()
    }

    pub fn has_ties(&self) -> bool {
        self.resident_prefs.iter().any(PreferenceList::has_ties)
            || self.hospital_prefs.iter().any(PreferenceList::has_ties)
    }

    /// Compares `a` and `b` in `agent`'s list. Both must lie on the opposite
    /// side of `agent`.
    pub fn relation(&self, agent: Agent, a: usize, b: usize) -> Relation {
        let (ra, rb) = match agent {
            Agent::Resident(r) => (self.resident_rank(r, a), self.resident_rank(r, b)),
            Agent::Hospital(h) => (self.hospital_rank(h, a), self.hospital_rank(h, b)),
        };
        match (ra, rb) {
            (None, None) => Relation::BothUnacceptable,
            (None, Some(_)) => Relation::FirstUnacceptable,
            (Some(_), None) => Relation::SecondUnacceptable,
            (Some(x), Some(y)) if x < y => Relation::Prefers,
            (Some(x), Some(y)) if x > y => Relation::PrefersOther,
            _ => Relation::Indifferent,
        }
    }

    /// Returns a copy with replaced preference lists; quotas and names kept.
    pub(crate) fn with_prefs(
        &self,
        resident_prefs: Vec<PreferenceList>,
        hospital_prefs: Vec<PreferenceList>,
    ) -> Result<Instance> {
        Instance::new(
            self.resident_names.clone(),
            self.hospital_names.clone(),
            resident_prefs,
            hospital_prefs,
            self.quotas.clone(),
        )
    }
}

fn check_unique(names: &[String]) -> Result<()> {
    let mut seen = HashMap::with_capacity(names.len());
    for name in names {
        if seen.insert(name.as_str(), ()).is_some() {
            return Err(Error::DuplicateName { name: name.clone() });
        }
    }
    Ok(())
}

fn rank_table(lists: &[PreferenceList], owners: &[String], targets: &[String]) -> Result<Vec<u32>> {
    let width = targets.len();
    let mut table = vec![UNRANKED; lists.len() * width];
    for (a, list) in lists.iter().enumerate() {
        for (pos, group) in list.groups().iter().enumerate() {
            if group.is_empty() {
                return Err(Error::EmptyTie {
                    agent: owners[a].clone(),
                });
            }
            for &b in group {
                if b >= width {
                    return Err(Error::UnknownName {
                        name: format!("#{b}"),
                        context: owners[a].clone(),
                    });
                }
                let slot = &mut table[a * width + b];
                if *slot != UNRANKED {
                    return Err(Error::DuplicateEntry {
                        agent: owners[a].clone(),
                        entry: targets[b].clone(),
                    });
                }
                *slot = pos as u32;
            }
        }
    }
    Ok(table)
}

/// Name-based construction, resolving references at [`InstanceBuilder::build`].
#[derive(Clone, Debug, Default)]
pub struct InstanceBuilder {
    residents: Vec<(String, Vec<Vec<String>>)>,
    hospitals: Vec<(String, Quota, Vec<Vec<String>>)>,
}

impl InstanceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn resident<N, S>(&mut self, name: N, prefs: Vec<Vec<S>>) -> &mut Self
    where
        N: Into<String>,
        S: Into<String>,
    {
        self.residents.push((name.into(), into_groups(prefs)));
        self
    }

    pub fn hospital<N, S>(
        &mut self,
        name: N,
        lower: usize,
        upper: usize,
        prefs: Vec<Vec<S>>,
    ) -> &mut Self
    where
        N: Into<String>,
        S: Into<String>,
    {
        self.hospitals
            .push((name.into(), Quota::new(lower, upper), into_groups(prefs)));
        self
    }

    pub fn build(&self) -> Result<Instance> {
        let resident_names: Vec<String> = self.residents.iter().map(|(n, _)| n.clone()).collect();
        let hospital_names: Vec<String> =
            self.hospitals.iter().map(|(n, _, _)| n.clone()).collect();
        check_unique(&resident_names)?;
        check_unique(&hospital_names)?;
        let r_index: HashMap<&str, usize> = resident_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let h_index: HashMap<&str, usize> = hospital_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();

        let resolve = |owner: &str, groups: &[Vec<String>], index: &HashMap<&str, usize>| {
            groups
                .iter()
                .map(|g| {
                    g.iter()
                        .map(|name| {
                            index
                                .get(name.as_str())
                                .copied()
                                .ok_or_else(|| Error::UnknownName {
                                    name: name.clone(),
                                    context: owner.to_string(),
                                })
                        })
                        .collect::<Result<Vec<usize>>>()
                })
                .collect::<Result<Vec<Vec<usize>>>>()
                .map(PreferenceList::new)
        };

        let resident_prefs = self
            .residents
            .iter()
            .map(|(name, groups)| resolve(name, groups, &h_index))
            .collect::<Result<Vec<_>>>()?;
        let hospital_prefs = self
            .hospitals
            .iter()
            .map(|(name, _, groups)| resolve(name, groups, &r_index))
            .collect::<Result<Vec<_>>>()?;
        let quotas = self.hospitals.iter().map(|(_, q, _)| *q).collect();
        Instance::new(
            resident_names,
            hospital_names,
            resident_prefs,
            hospital_prefs,
            quotas,
        )
    }
}

fn into_groups<S: Into<String>>(prefs: Vec<Vec<S>>) -> Vec<Vec<String>> {
    prefs
        .into_iter()
        .map(|g| g.into_iter().map(Into::into).collect())
        .collect()
}

/// A set of resident-hospital pairs with at most one hospital per resident.
///
/// Capacity and acceptability are not enforced here; they are checked by the
/// verifier before any score or stability computation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    assignment: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(num_residents: usize) -> Self {
        Matching {
            assignment: vec![None; num_residents],
        }
    }

    pub fn from_assignment(assignment: Vec<Option<usize>>) -> Self {
        Matching { assignment }
    }

    /// Fails if a resident occurs in two pairs or is out of range.
    pub fn from_pairs<I>(num_residents: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut m = Matching::empty(num_residents);
        for (r, h) in pairs {
            if r >= num_residents {
                return Err(Error::InfeasibleMatching(format!(
                    "resident #{r} out of range"
                )));
            }
            if m.assignment[r].replace(h).is_some() {
                return Err(Error::InfeasibleMatching(format!(
                    "resident #{r} is assigned twice"
                )));
            }
        }
        Ok(m)
    }

    pub fn num_residents(&self) -> usize {
        self.assignment.len()
    }

    #[inline]
    pub fn hospital_of(&self, r: usize) -> Option<usize> {
        self.assignment[r]
    }

    pub fn assign(&mut self, r: usize, h: Option<usize>) {
        self.assignment[r] = h;
    }

    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    /// Pairs in resident order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.assignment
            .iter()
            .enumerate()
            .filter_map(|(r, h)| h.map(|h| (r, h)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.assignment.iter().filter(|h| h.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Residents assigned to `h`, in index order.
    pub fn residents_of(&self, h: usize) -> Vec<usize> {
        self.assignment
            .iter()
            .enumerate()
            .filter_map(|(r, &a)| (a == Some(h)).then_some(r))
            .collect()
    }

    /// |M(h)| for every hospital `0..num_hospitals`; out-of-range entries are skipped.
    pub fn loads(&self, num_hospitals: usize) -> Vec<usize> {
        let mut loads = vec![0; num_hospitals];
        for h in self.assignment.iter().flatten() {
            if *h < num_hospitals {
                loads[*h] += 1;
            }
        }
        loads
    }

    pub fn contains(&self, r: usize, h: usize) -> bool {
        self.assignment.get(r).copied().flatten() == Some(h)
    }

    /// Human-readable `{(r1, h1), ...}` using the instance's names.
    pub fn display<'a>(&'a self, instance: &'a Instance) -> impl fmt::Display + 'a {
        DisplayMatching {
            matching: self,
            instance,
        }
    }
}

struct DisplayMatching<'a> {
    matching: &'a Matching,
    instance: &'a Instance,
}

impl fmt::Display for DisplayMatching<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (r, h)) in self.matching.pairs().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(
                f,
                "({}, {})",
                self.instance.resident_name(r),
                self.instance.hospital_name(h)
            )?;
        }
        write!(f, "}}")
    }
}
