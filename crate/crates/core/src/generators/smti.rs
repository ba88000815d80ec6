//! Marriage-model instances as stable marriage with ties and incomplete
//! lists (SMTI).
//!
//! Residents become men and hospitals women. A woman `w_j` coming from a
//! `[0, 1]` hospital gets a private extra man who lists only her and whom she
//! ranks last, so she is matched in every stable matching. The SMTI side is
//! represented as an [`Instance`] with every quota `[1, 1]`; its score is then
//! the matching size.

use crate::error::{Error, Result};
use crate::instance::{Instance, Matching, PreferenceList, Quota};

#[derive(Clone, Debug)]
pub struct SmtiReduction {
    smti: Instance,
    men: usize,
    /// `(extra man, woman)` per `[0, 1]` hospital.
    extra: Vec<(usize, usize)>,
}

/// Converts a marriage-model instance; errors unless every `u(h) = 1`.
pub fn to_smti(inst: &Instance) -> Result<SmtiReduction> {
    if let Some(h) = (0..inst.num_hospitals()).find(|&h| inst.quota(h).upper != 1) {
        let q = inst.quota(h);
        return Err(Error::NotMarriageModel(format!(
            "hospital `{}` has quotas {q}",
            inst.hospital_name(h)
        )));
    }
    let n = inst.num_residents();
    let mut names: Vec<String> = inst.resident_names().to_vec();
    let mut men: Vec<PreferenceList> = (0..n).map(|r| inst.resident_prefs(r).clone()).collect();
    let mut women: Vec<PreferenceList> = Vec::with_capacity(inst.num_hospitals());
    let mut extra = Vec::new();
    for h in 0..inst.num_hospitals() {
        let mut groups = inst.hospital_prefs(h).groups().to_vec();
        if inst.quota(h).lower == 0 {
            let a = names.len();
            let mut name = format!("a_{}", inst.hospital_name(h));
            while names.contains(&name) {
                name.push('\'');
            }
            names.push(name);
            men.push(PreferenceList::strict([h]));
            groups.push(vec![a]);
            extra.push((a, h));
        }
        women.push(PreferenceList::new(groups));
    }
    let smti = Instance::new(
        names,
        inst.hospital_names().to_vec(),
        men,
        women,
        vec![Quota::new(1, 1); inst.num_hospitals()],
    )?;
    Ok(SmtiReduction {
        smti,
        men: n,
        extra,
    })
}

impl SmtiReduction {
    pub fn instance(&self) -> &Instance {
        &self.smti
    }

    /// Extra men as `(man, woman)`.
    pub fn extra_men(&self) -> &[(usize, usize)] {
        &self.extra
    }

    /// HRT matching to SMTI matching: every unmatched `[0, 1]` woman takes
    /// her extra man.
    pub fn forward(&self, m: &Matching) -> Matching {
        let mut a = m.assignment().to_vec();
        a.resize(self.smti.num_residents(), None);
        let taken = m.loads(self.smti.num_hospitals());
        for &(man, w) in &self.extra {
            if taken[w] == 0 {
                a[man] = Some(w);
            }
        }
        Matching::from_assignment(a)
    }

    /// SMTI matching back to the original instance: extra men are dropped.
    pub fn back(&self, m: &Matching) -> Matching {
        Matching::from_assignment(m.assignment()[..self.men].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::families;
    use crate::verify;

    #[test]
    fn gap_pair_has_no_extra_men() {
        let inst = families::marriage_gap();
        let red = to_smti(&inst).unwrap();
        assert!(red.extra_men().is_empty());
        let n = Matching::from_pairs(2, [(0, 0), (1, 1)]).unwrap();
        let fwd = red.forward(&n);
        assert!(verify::is_stable(red.instance(), &fwd).unwrap());
        assert_eq!(
            verify::score(red.instance(), &fwd).unwrap(),
            verify::score(&inst, &n).unwrap()
        );
        assert_eq!(red.back(&fwd), n);
    }

    #[test]
    fn one_extra_man_for_a_zero_lower_quota() {
        let inst = families::marriage_tight();
        let red = to_smti(&inst).unwrap();
        assert_eq!(red.extra_men(), &[(2, 2)]);
        let w = red.instance().hospital_prefs(2);
        assert_eq!(w.groups().last().unwrap(), &vec![2]);
        assert_eq!(red.instance().resident_name(2), "a_h3");
    }

    #[test]
    fn rejects_larger_capacities() {
        let inst = families::uniform_gap(2, 3).unwrap();
        assert!(matches!(to_smti(&inst), Err(Error::NotMarriageModel(_))));
    }
}
