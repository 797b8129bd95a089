use serde::{Deserialize, Serialize};

use super::group::PermGroup;
use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// On-disk group definition.
///
/// `generators` holds 1-based image lists; `cycles` the same generators in
/// cycle notation. Either form may be given; when both are, they must agree
/// generator by generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDefinition {
    pub name: String,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycles: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
    /// Declared order, checked against the stabilizer chain when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
}

impl GroupDefinition {
    pub fn from_group(name: &str, group: &PermGroup, tags: Vec<String>) -> Self {
        let gens = group.generators();
        GroupDefinition {
            name: name.to_string(),
            degree: group.degree(),
            generators: Some(gens.iter().map(|g| g.to_one_based()).collect()),
            cycles: Some(gens.iter().map(|g| g.to_cycle_string()).collect()),
            tags,
            order: Some(group.order()),
        }
    }

    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        let from_images = self
            .generators
            .as_ref()
            .map(|gs| {
                gs.iter()
                    .map(|imgs| {
                        if imgs.len() != self.degree {
                            return Err(Error::MalformedPermutation(format!(
                                "image list of length {} for degree {}",
                                imgs.len(),
                                self.degree
                            )));
                        }
                        Permutation::from_one_based(imgs)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        let from_cycles = self
            .cycles
            .as_ref()
            .map(|cs| {
                cs.iter()
                    .map(|c| Permutation::parse_cycles(self.degree, c))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        match (from_images, from_cycles) {
            (Some(a), Some(b)) => {
                if a != b {
                    return Err(Error::MalformedPermutation(
                        "\"generators\" and \"cycles\" disagree".into(),
                    ));
                }
                Ok(a)
            }
            (Some(a), None) | (None, Some(a)) => Ok(a),
            (None, None) => Err(Error::MalformedPermutation(
                "definition has neither \"generators\" nor \"cycles\"".into(),
            )),
        }
    }

    pub fn build(&self, limits: &Limits) -> Result<PermGroup> {
        let g = super::group_from_generators(self.degree, self.permutations()?, limits)?;
        if let Some(o) = self.order {
            if g.order() != o {
                return Err(Error::Inconsistent(format!(
                    "{}: declared order {o} but generators give {}",
                    self.name,
                    g.order()
                )));
            }
        }
        Ok(g)
    }

    /// Primes `p` for which the file asserts p-solvability, from tags of the
    /// form `p-solvable:p`; `solvable` asserts it for every prime.
    pub fn tagged_p_solvable(&self, p: u64) -> Option<bool> {
        if self.tags.iter().any(|t| t == "solvable") {
            return Some(true);
        }
        let key = format!("p-solvable:{p}");
        if self.tags.contains(&key) {
            return Some(true);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_forms_must_agree() {
        let ok: GroupDefinition = serde_json::from_str(
            r#"{"name":"S3","degree":3,"generators":[[2,3,1],[2,1,3]],"cycles":["(1,2,3)","(1,2)"]}"#,
        )
        .unwrap();
        assert_eq!(ok.build(&Limits::default()).unwrap().order(), 6);
        let bad: GroupDefinition = serde_json::from_str(
            r#"{"name":"S3","degree":3,"generators":[[2,3,1]],"cycles":["(1,3,2)"]}"#,
        )
        .unwrap();
        assert!(bad.permutations().is_err());
        let wrong_order: GroupDefinition =
            serde_json::from_str(r#"{"name":"C3","degree":3,"cycles":["(1,2,3)"],"order":6}"#).unwrap();
        assert!(wrong_order.build(&Limits::default()).is_err());
    }
}
