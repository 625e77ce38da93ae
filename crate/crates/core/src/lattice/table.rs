use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Elem;

/// A total binary operation on `0..n`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryTable {
    n: usize,
    data: Vec<Elem>,
}

impl BinaryTable {
    pub fn from_fn(n: usize, f: impl Fn(Elem, Elem) -> Elem) -> Self {
        let data = (0..n * n).map(|i| f(i / n, i % n)).collect();
        BinaryTable { n, data }
    }

    pub fn from_flat(n: usize, data: Vec<Elem>) -> Self {
        assert_eq!(data.len(), n * n, "binary table has the wrong length");
        BinaryTable { n, data }
    }

    pub fn constant(n: usize, value: Elem) -> Self {
        BinaryTable { n, data: vec![value; n * n] }
    }

    /// Builds a table from rows; `None` if the rows are ragged or the wrong count.
    pub fn from_rows(n: usize, rows: &[Vec<Elem>]) -> Option<Self> {
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(BinaryTable { n, data: rows.concat() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: Elem, b: Elem) -> Elem {
        self.data[a * self.n + b]
    }

    pub fn set(&mut self, a: Elem, b: Elem, value: Elem) {
        self.data[a * self.n + b] = value;
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        (0..self.n).map(|a| self.data[a * self.n..(a + 1) * self.n].to_vec()).collect()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }
}

impl Serialize for BinaryTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BinaryTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Elem>>::deserialize(deserializer)?;
        let n = rows.len();
        BinaryTable::from_rows(n, &rows)
            .ok_or_else(|| serde::de::Error::custom("binary table must be square"))
    }
}
