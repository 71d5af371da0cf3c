use std::fmt;

use super::{bits, register_dim};
use crate::error::{Error, Result};

/// The solution set `f⁻¹(1)` of a Boolean search oracle over `n` qubits,
/// together with the 2-adic split of its cardinality `M = 2^q (2p + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedSet {
    n: usize,
    members: Vec<usize>, // sorted ascending, no duplicates
}

impl MarkedSet {
    /// Builds a marked set from basis indices, rejecting out-of-range values
    /// and duplicates. The empty set is allowed (uniform limit).
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Result<Self> {
        let dim = register_dim(n)?;
        let mut members: Vec<usize> = members.into_iter().collect();
        for &x in &members {
            if x >= dim {
                return Err(Error::IndexOutOfRange { index: x, n });
            }
        }
        members.sort_unstable();
        for pair in members.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateIndex(pair[0]));
            }
        }
        Ok(Self { n, members })
    }

    /// Parses the oracle text format: one entry per line, either a decimal
    /// basis index or a binary string of exactly `n` characters (qubit 0
    /// leftmost). Blank lines and lines starting with `#` are ignored;
    /// duplicates are rejected. A digit string of length `n` consisting only
    /// of 0/1 is read as binary.
    pub fn from_oracle_text(n: usize, text: &str) -> Result<Self> {
        let dim = register_dim(n)?;
        let mut members = Vec::new();
        let mut seen = vec![false; dim];
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let token = raw.trim();
            if token.is_empty() || token.starts_with('#') {
                continue;
            }
            let value = parse_oracle_token(token, n).map_err(|reason| Error::OracleParse {
                line,
                reason,
            })?;
            if seen[value] {
                return Err(Error::OracleParse {
                    line,
                    reason: format!("duplicate basis index {value}"),
                });
            }
            seen[value] = true;
            members.push(value);
        }
        Self::new(n, members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cardinality `M = |f⁻¹(1)|`.
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in ascending order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// The split `M = 2^q (2p + 1)`; `None` for the empty set.
    pub fn two_adic_split(&self) -> Option<(u32, usize)> {
        let m = self.size();
        if m == 0 {
            return None;
        }
        let q = m.trailing_zeros();
        let odd = m >> q;
        Some((q, (odd - 1) / 2))
    }

    /// Whether flipping qubit `qubit` maps the set onto itself.
    pub fn invariant_under_flip(&self, qubit: usize) -> bool {
        self.members
            .iter()
            .all(|&x| self.contains(bits::flip_qubit(x, self.n, qubit)))
    }

    /// Whether qubit `qubit` takes the same value on every member.
    /// Undefined (returns `false`) for the empty set.
    pub fn qubit_is_constant(&self, qubit: usize) -> bool {
        match self.members.first() {
            None => false,
            Some(&first) => {
                let v = bits::qubit_bit(first, self.n, qubit);
                self.members
                    .iter()
                    .all(|&x| bits::qubit_bit(x, self.n, qubit) == v)
            }
        }
    }

    /// The complement set `f⁻¹(0)`.
    pub fn complement(&self) -> Self {
        let dim = 1usize << self.n;
        let members = (0..dim).filter(|&x| !self.contains(x)).collect();
        Self { n: self.n, members }
    }

    /// Projects the members onto `keep` qubits (ascending), deduplicating.
    /// The result lives on a `keep.len()`-qubit register.
    pub fn project(&self, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptyRegister);
        }
        let mut projected: Vec<usize> = self
            .members
            .iter()
            .map(|&x| bits::pack_bits(x, self.n, keep))
            .collect();
        projected.sort_unstable();
        projected.dedup();
        Ok(Self {
            n: keep.len(),
            members: projected,
        })
    }
}

impl fmt::Display for MarkedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

fn parse_oracle_token(token: &str, n: usize) -> std::result::Result<usize, String> {
    let dim = 1usize << n;
    let is_binary = token.len() == n && token.bytes().all(|b| b == b'0' || b == b'1');
    let value = if is_binary {
        usize::from_str_radix(token, 2).expect("binary digits")
    } else {
        token
            .parse::<usize>()
            .map_err(|_| format!("cannot parse '{token}' as a basis index"))?
    };
    if value >= dim {
        return Err(format!("basis index {value} out of range for {n} qubit(s)"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_adic_split_of_twelve() {
        let set = MarkedSet::new(4, 0..12).unwrap();
        assert_eq!(set.two_adic_split(), Some((2, 1))); // 12 = 2² · 3
        let single = MarkedSet::new(3, [5]).unwrap();
        assert_eq!(single.two_adic_split(), Some((0, 0)));
        assert_eq!(MarkedSet::new(3, []).unwrap().two_adic_split(), None);
    }

    #[test]
    fn rejects_out_of_range_and_duplicates() {
        assert!(matches!(
            MarkedSet::new(3, [8]),
            Err(Error::IndexOutOfRange { index: 8, n: 3 })
        ));
        assert!(matches!(
            MarkedSet::new(3, [1, 1]),
            Err(Error::DuplicateIndex(1))
        ));
    }

    #[test]
    fn oracle_text_mixes_decimal_and_binary() {
        let text = "# solutions\n5\n\n010\n111\n";
        let set = MarkedSet::from_oracle_text(3, text).unwrap();
        assert_eq!(set.members(), &[2, 5, 7]);

        let dup = MarkedSet::from_oracle_text(3, "5\n101\n");
        assert!(matches!(dup, Err(Error::OracleParse { line: 2, .. })));

        let bad = MarkedSet::from_oracle_text(3, "9\n");
        assert!(matches!(bad, Err(Error::OracleParse { line: 1, .. })));
    }

    #[test]
    fn binary_reading_takes_precedence_at_length_n() {
        // "0011" is length 4 on a 4-qubit register: binary 3, not decimal 11.
        let set = MarkedSet::from_oracle_text(4, "0011\n").unwrap();
        assert_eq!(set.members(), &[3]);
    }

    #[test]
    fn flip_invariance_and_projection() {
        // {000, 010}: flipping qubit 1 (bit position 1) maps the set to itself.
        let set = MarkedSet::new(3, [0, 2]).unwrap();
        assert!(set.invariant_under_flip(1));
        assert!(!set.invariant_under_flip(0));
        assert!(set.qubit_is_constant(0));
        assert!(set.qubit_is_constant(2));
        let projected = set.project(&[0, 2]).unwrap();
        assert_eq!(projected.members(), &[0]);
    }
}
