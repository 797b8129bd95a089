use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::verdict::{CheckVerdict, ColumnSet, LinearWitness, Mode};
use crate::chartab::{character_table, class_fusion, induce, p_part, restrict, CharacterTable, ClassFusion};
use crate::decomp::{strong_solve, verify_witness, weak_solve, DecompositionInstance, SolveStatus, SolveVerdict};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::permgrp::PermGroup;
use crate::psub::{p_group_prime, subgroups_of_index, sylow_subgroup, SubgroupRecord};

/// Shared data for deciding the question for every character of `G` against
/// one ambient p-subgroup `H`: the table of `H`, the fusion into `G`, and the
/// induced columns per admissible index, built once and reused.
pub struct LocalCheck<'a> {
    table: &'a CharacterTable,
    prime: u64,
    ambient_table: CharacterTable,
    fusion: ClassFusion,
    limits: Limits,
    column_sets: Mutex<BTreeMap<u64, Result<Arc<ColumnSet>>>>,
}

impl<'a> LocalCheck<'a> {
    /// Ambient group a Sylow p-subgroup of `G`.
    pub fn sylow(table: &'a CharacterTable, prime: u64, limits: &Limits) -> Result<Self> {
        let p = sylow_subgroup(table.group(), prime, limits)?;
        Self::new(table, prime, p, limits)
    }

    /// Ambient group an arbitrary p-subgroup `h` of `G`.
    pub fn for_subgroup(table: &'a CharacterTable, prime: u64, h: &PermGroup, limits: &Limits) -> Result<Self> {
        if !h.is_subgroup_of(table.group()) {
            return Err(Error::NotASubgroup("ambient p-group must lie in G".into()));
        }
        match p_group_prime(h) {
            Some(q) if q != prime => return Err(Error::NotAPGroup(prime)),
            None if !h.is_trivial() => return Err(Error::NotAPGroup(prime)),
            _ => {}
        }
        Self::new(table, prime, h.clone(), limits)
    }

    fn new(table: &'a CharacterTable, prime: u64, h: PermGroup, limits: &Limits) -> Result<Self> {
        let ambient_table = character_table(&h, limits)?;
        let fusion = class_fusion(&ambient_table, table)?;
        Ok(LocalCheck {
            table,
            prime,
            ambient_table,
            fusion,
            limits: *limits,
            column_sets: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn table(&self) -> &CharacterTable {
        self.table
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn ambient(&self) -> &PermGroup {
        self.ambient_table.group()
    }

    pub fn ambient_table(&self) -> &CharacterTable {
        &self.ambient_table
    }

    pub fn fusion(&self) -> &ClassFusion {
        &self.fusion
    }

    /// `|H:Q|` for admissible `Q`, i.e. those with `|G:Q|_p = χ(1)_p`.
    pub fn target_index(&self, chi: usize) -> Result<u64> {
        let dp = p_part(self.table.degrees()[chi], self.prime);
        let gp = p_part(self.table.order(), self.prime);
        let h = self.ambient().order();
        // |Q| = |G|_p / χ(1)_p must not exceed |H|
        if dp * h < gp {
            return Err(Error::PreconditionViolated(format!(
                "χ(1)_p = {dp} is smaller than |G:H|_p = {}",
                gp / h
            )));
        }
        Ok(dp * h / gp)
    }

    /// Multiplicities of the irreducibles of `H` in `χ_H`.
    pub fn restriction(&self, chi: usize) -> Result<Vec<u64>> {
        let r = restrict(&self.table.irreducibles()[chi], self.table, &self.ambient_table, &self.fusion)?;
        self.ambient_table.decompose(&r)
    }

    /// Admissible subgroups of the given index in `H` and their induced columns.
    pub fn column_set(&self, index: u64) -> Result<Arc<ColumnSet>> {
        if let Some(r) = self.column_sets.lock().unwrap().get(&index) {
            return r.clone();
        }
        let r = self.build_column_set(index).map(Arc::new);
        self.column_sets.lock().unwrap().insert(index, r.clone());
        r
    }

    fn build_column_set(&self, index: u64) -> Result<ColumnSet> {
        let h = self.ambient();
        let ht = &self.ambient_table;
        let k = ht.class_count();
        let degrees = ht.degrees().to_vec();
        if index == 1 {
            let columns = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
            return Ok(ColumnSet {
                index,
                subgroups: vec![SubgroupRecord {
                    subgroup: h.clone(),
                    index_in_parent: 1,
                    conjugacy_class_size: 1,
                }],
                columns,
                provenance: (0..k).map(|i| vec![(0, i)]).collect(),
                lambda_degrees: degrees.iter().map(|&d| vec![d]).collect(),
            });
        }
        if index == h.order() {
            return Ok(ColumnSet {
                index,
                subgroups: vec![SubgroupRecord {
                    subgroup: PermGroup::trivial(h.degree()),
                    index_in_parent: index,
                    conjugacy_class_size: 1,
                }],
                columns: vec![degrees],
                provenance: vec![vec![(0, 0)]],
                lambda_degrees: vec![vec![1]],
            });
        }
        let subgroups = subgroups_of_index(h, index, &self.limits)?;
        let mut columns: Vec<Vec<u64>> = Vec::new();
        let mut provenance: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut lambda_degrees: Vec<Vec<u64>> = Vec::new();
        let mut seen: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
        for (s, rec) in subgroups.iter().enumerate() {
            if rec.subgroup.order() * index != h.order() {
                return Err(Error::Inconsistent("admissible subgroup of the wrong order".into()));
            }
            let qt = character_table(&rec.subgroup, &self.limits)?;
            let fusion = class_fusion(&qt, ht)?;
            for (l, lambda) in qt.irreducibles().iter().enumerate() {
                let col = ht.decompose(&induce(lambda, &qt, ht, &fusion)?)?;
                let deg: u64 = col.iter().zip(ht.degrees()).map(|(a, d)| a * d).sum();
                if deg != index * qt.degrees()[l] {
                    return Err(Error::Inconsistent("induced degree mismatch".into()));
                }
                let c = *seen.entry(col.clone()).or_insert_with(|| {
                    columns.push(col);
                    provenance.push(Vec::new());
                    lambda_degrees.push(Vec::new());
                    columns.len() - 1
                });
                provenance[c].push((s, l));
                lambda_degrees[c].push(qt.degrees()[l]);
            }
        }
        Ok(ColumnSet {
            index,
            subgroups,
            columns,
            provenance,
            lambda_degrees,
        })
    }

    fn blank(&self, chi: usize, mode: Mode) -> CheckVerdict {
        let degree = self.table.degrees()[chi];
        CheckVerdict {
            group: self.table.tag(),
            prime: self.prime,
            character: chi,
            degree,
            degree_p_part: p_part(degree, self.prime),
            target_index: 0,
            ambient_order: self.ambient().order(),
            mode,
            subgroup_classes: 0,
            column_count: 0,
            weak: None,
            strong: None,
            linear_witness: None,
            capped: None,
            instance: None,
            column_set: None,
            elapsed: Default::default(),
        }
    }

    /// Decides the requested forms for the character at `chi`. Resource caps
    /// become capped verdicts; other errors propagate.
    pub fn check(&self, chi: usize, mode: Mode) -> Result<CheckVerdict> {
        let start = Instant::now();
        let mut v = self.blank(chi, mode);
        match self.fill(&mut v) {
            Ok(()) => {}
            Err(e) if e.is_resource_cap() => {
                v.weak = None;
                v.strong = None;
                v.linear_witness = None;
                v.capped = Some(e.to_string());
            }
            Err(e) => return Err(e),
        }
        v.elapsed = start.elapsed();
        Ok(v)
    }

    fn fill(&self, v: &mut CheckVerdict) -> Result<()> {
        let (chi, mode) = (v.character, v.mode);
        v.target_index = self.target_index(chi)?;
        let target = self.restriction(chi)?;
        let cs = self.column_set(v.target_index)?;
        v.subgroup_classes = cs.subgroups.len();
        v.column_count = cs.columns.len();
        let inst = DecompositionInstance::with_provenance(
            cs.columns.clone(),
            target.clone(),
            self.ambient_table.degrees().to_vec(),
            cs.provenance.clone(),
        )?;
        if v.target_index == 1 {
            // the columns are the irreducibles themselves
            let w: Vec<BigInt> = target.iter().map(|&x| BigInt::from(x)).collect();
            let verdict = SolveVerdict {
                status: SolveStatus::Feasible,
                witness: Some(w.clone()),
                search_nodes: 0,
                certificate: None,
            };
            if mode.weak() {
                v.weak = Some(verdict.clone());
            }
            if mode.strong() {
                v.strong = Some(verdict);
            }
            v.linear_witness = (0..w.len())
                .find(|&c| w[c].is_positive() && cs.linear_origin(c).is_some())
                .map(|c| self.linear_witness(&cs, c, &w));
        } else {
            if mode.weak() {
                v.weak = Some(weak_solve(&inst)?);
            }
            if mode.strong() {
                v.strong = Some(strong_solve(&inst, self.limits.node_budget)?);
            }
            if let Some(s) = v.strong.as_ref().filter(|s| s.is_feasible()) {
                let w = s.witness.clone().expect("feasible verdicts carry a witness");
                v.linear_witness = self.find_linear_witness(&inst, &cs, &w);
            }
        }
        self.audit(&inst, v)?;
        v.instance = Some(inst);
        v.column_set = Some(cs);
        Ok(())
    }

    fn linear_witness(&self, cs: &ColumnSet, c: usize, w: &[BigInt]) -> LinearWitness {
        let (subgroup, character) = cs.linear_origin(c).expect("column has a linear origin");
        LinearWitness {
            column: c,
            subgroup,
            character,
            coefficient: w[c].clone(),
        }
    }

    /// A nonnegative decomposition using some column induced from a linear
    /// character: the given witness if it already does, otherwise each such
    /// column is tried in order by solving for the remainder.
    fn find_linear_witness(
        &self,
        inst: &DecompositionInstance,
        cs: &ColumnSet,
        w: &[BigInt],
    ) -> Option<LinearWitness> {
        if let Some(c) = (0..w.len()).find(|&c| w[c].is_positive() && cs.linear_origin(c).is_some()) {
            return Some(self.linear_witness(cs, c, w));
        }
        for c in 0..cs.columns.len() {
            if cs.linear_origin(c).is_none() {
                continue;
            }
            let col = &cs.columns[c];
            if col.iter().zip(&inst.target).any(|(a, t)| a > t) {
                continue;
            }
            let mut rest = inst.clone();
            for (t, a) in rest.target.iter_mut().zip(col) {
                *t -= a;
            }
            match strong_solve(&rest, self.limits.node_budget) {
                Ok(s) if s.is_feasible() => {
                    let mut a = s.witness.expect("feasible verdicts carry a witness");
                    a[c] += BigInt::one();
                    return Some(self.linear_witness(cs, c, &a));
                }
                Ok(_) => {}
                Err(_) => return None,
            }
        }
        None
    }

    fn audit(&self, inst: &DecompositionInstance, v: &CheckVerdict) -> Result<()> {
        for (verdict, nonneg) in [(&v.weak, false), (&v.strong, true)] {
            if let Some(w) = verdict.as_ref().and_then(|s| s.witness.as_ref()) {
                if !verify_witness(inst, w, nonneg)? {
                    return Err(Error::Inconsistent("witness fails verification".into()));
                }
            }
        }
        let weak = v.weak.as_ref().map(|s| s.is_feasible());
        let strong = v.strong.as_ref().map(|s| s.is_feasible());
        if strong == Some(true) && weak == Some(false) {
            return Err(Error::Inconsistent("strong-feasible instance is weak-infeasible".into()));
        }
        if let Some(lw) = &v.linear_witness {
            if lw.coefficient.is_zero() || lw.coefficient.is_negative() {
                return Err(Error::Inconsistent("linear witness with nonpositive coefficient".into()));
            }
        }
        Ok(())
    }
}
