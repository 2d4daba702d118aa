//! Connectivity systems given by an explicit value table.
//!
//! Text format: a header line `system <n>` followed by 2^n lines
//! `mask value`, with `mask` written in binary and element 0 as the least
//! significant (rightmost) bit. Every mask must appear exactly once.

use std::fmt::Write as _;

use crate::error::{domain, parse_err, Error, Result};
use crate::subset::{GroundSet, SubsetMask};
use crate::system::ConnectivitySystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntheticSystem {
    ground: GroundSet,
    table: Vec<u32>,
}

impl SyntheticSystem {
    /// Validates the table (length 2^n, symmetric, submodular).
    pub fn new(ground: GroundSet, table: Vec<u32>) -> Result<Self> {
        let sys = ConnectivitySystem::from_table(ground.clone(), table.clone())?;
        if let Some(v) = sys.verify_axioms().first() {
            return domain(format!("not a connectivity system: {v}"));
        }
        Ok(SyntheticSystem { ground, table })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn system(&self) -> ConnectivitySystem {
        ConnectivitySystem::from_table(self.ground.clone(), self.table.clone())
            .expect("validated table")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let Some((hl, header)) = lines.next() else {
            return parse_err(1, "empty input");
        };
        let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["system", n] => n
                .parse::<usize>()
                .or_else(|_| parse_err(hl, format!("bad element count {n:?}")))?,
            _ => return parse_err(hl, "expected `system <n>`"),
        };
        let ground = GroundSet::indexed(n).map_err(|e| Error::Parse {
            line: hl,
            message: e.to_string(),
        })?;
        let size = 1usize << n;
        let mut table = vec![None; size];
        for (ln, line) in lines {
            let [mask, value] = line.split_whitespace().collect::<Vec<_>>()[..] else {
                return parse_err(ln, "expected `mask value`");
            };
            if mask.len() > n.max(1) {
                return parse_err(ln, format!("mask {mask:?} longer than {n} bits"));
            }
            let bits = u32::from_str_radix(mask, 2)
                .or_else(|_| parse_err(ln, format!("bad binary mask {mask:?}")))?;
            if bits as usize >= size {
                return parse_err(ln, format!("mask {mask:?} out of range"));
            }
            let value = value
                .parse::<u32>()
                .or_else(|_| parse_err(ln, format!("bad value {value:?}")))?;
            if table[bits as usize].replace(value).is_some() {
                return parse_err(ln, format!("mask {mask:?} listed twice"));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(m, v)| {
                v.ok_or_else(|| Error::Parse {
                    line: 0,
                    message: format!(
                        "no value for mask {}",
                        SubsetMask::from_bits(m as u32).to_binary_lsb_right(n)
                    ),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SyntheticSystem::new(ground, table)
    }

    pub fn to_text(&self) -> String {
        let n = self.ground.len();
        let mut out = format!("system {n}\n");
        for (m, v) in self.table.iter().enumerate() {
            let mask = SubsetMask::from_bits(m as u32).to_binary_lsb_right(n.max(1));
            writeln!(out, "{mask} {v}").unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let text = "system 2\n00 0\n01 1\n10 1\n11 0\n";
        let s = SyntheticSystem::parse(text).unwrap();
        assert_eq!(s.table(), &[0, 1, 1, 0]);
        assert_eq!(s.to_text(), text);
    }

    #[test]
    fn empty_ground_set_is_allowed() {
        let s = SyntheticSystem::parse("system 0\n0 3\n").unwrap();
        assert_eq!(s.system().at(SubsetMask::EMPTY), 3);
    }

    #[test]
    fn rejects_asymmetric_table() {
        let err = SyntheticSystem::parse("system 2\n00 0\n01 1\n10 2\n11 0\n").unwrap_err();
        assert!(err.to_string().contains("symmetry"), "{err}");
    }

    #[test]
    fn rejects_non_submodular_table() {
        // λ({a}) = λ({b}) = 0 but λ(∅) = λ(E) = 1
        let err = SyntheticSystem::parse("system 2\n00 1\n01 0\n10 0\n11 1\n").unwrap_err();
        assert!(err.to_string().contains("submodularity"), "{err}");
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(SyntheticSystem::parse("").is_err());
        assert!(SyntheticSystem::parse("sys 1\n").is_err());
        assert!(SyntheticSystem::parse("system 1\n0 0\n").is_err());
        assert!(SyntheticSystem::parse("system 1\n0 0\n0 0\n1 0\n").is_err());
        assert!(SyntheticSystem::parse("system 1\n0 0\n2 0\n").is_err());
        assert!(SyntheticSystem::parse("system 1\n0 0\n1 x\n").is_err());
    }
}
