//! Finite ℤ-filtered chain complexes over ℚ.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ComplexError;
use crate::linalg::{self, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    #[serde(rename = "M")]
    pub maslov: i32,
    #[serde(rename = "A")]
    pub alexander: i32,
}

impl Generator {
    pub fn new(label: impl Into<String>, maslov: i32, alexander: i32) -> Self {
        Generator {
            label: label.into(),
            maslov,
            alexander,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    generators: Vec<Generator>,
    // (from, to) -> coefficient of `to` in ∂(from)
    differential: BTreeMap<(usize, usize), Q>,
}

impl FilteredComplex {
    pub fn new(
        generators: Vec<Generator>,
        entries: impl IntoIterator<Item = (usize, usize, Q)>,
    ) -> Result<Self, ComplexError> {
        let mut labels = BTreeSet::new();
        for g in &generators {
            if !labels.insert(g.label.as_str()) {
                return Err(ComplexError::DuplicateLabel(g.label.clone()));
            }
        }
        let mut differential = BTreeMap::new();
        for (from, to, c) in entries {
            if from >= generators.len() || to >= generators.len() {
                return Err(ComplexError::UnknownLabel(format!("#{}", from.max(to))));
            }
            let e: &mut Q = differential.entry((from, to)).or_insert_with(Q::zero);
            *e += c;
        }
        differential.retain(|_, c: &mut Q| !c.is_zero());
        let c = FilteredComplex {
            generators,
            differential,
        };
        c.validate()?;
        Ok(c)
    }

    /// Build from labelled entries.
    pub fn from_labels(
        generators: Vec<Generator>,
        entries: &[(&str, &str, Q)],
    ) -> Result<Self, ComplexError> {
        let index: HashMap<&str, usize> = generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.label.as_str(), i))
            .collect();
        let mut out = Vec::new();
        for (f, t, c) in entries {
            let fi = *index
                .get(f)
                .ok_or_else(|| ComplexError::UnknownLabel(f.to_string()))?;
            let ti = *index
                .get(t)
                .ok_or_else(|| ComplexError::UnknownLabel(t.to_string()))?;
            out.push((fi, ti, c.clone()));
        }
        drop(index);
        Self::new(generators, out)
    }

    fn validate(&self) -> Result<(), ComplexError> {
        for &(f, t) in self.differential.keys() {
            let (gf, gt) = (&self.generators[f], &self.generators[t]);
            if gt.maslov != gf.maslov - 1 {
                return Err(ComplexError::Grading {
                    from: gf.label.clone(),
                    to: gt.label.clone(),
                });
            }
            if gt.alexander > gf.alexander {
                return Err(ComplexError::Filtration {
                    from: gf.label.clone(),
                    to: gt.label.clone(),
                });
            }
        }
        let mut square: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        for (&(a, b), c1) in &self.differential {
            for (&(b2, c), c2) in self.differential.range((b, 0)..=(b, usize::MAX)) {
                debug_assert_eq!(b, b2);
                *square.entry((a, c)).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        if square.values().any(|v| !v.is_zero()) {
            return Err(ComplexError::NotDifferential);
        }
        Ok(())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn differential(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.differential.iter().map(|(&(f, t), c)| (f, t, c))
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    fn in_degree(&self, m: i32, keep: &dyn Fn(&Generator) -> bool) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&i| self.generators[i].maslov == m && keep(&self.generators[i]))
            .collect()
    }

    /// Matrix of ∂ restricted to `src -> dst`, one row per source.
    fn block(&self, src: &[usize], dst: &[usize]) -> Vec<Vec<Q>> {
        let pos: HashMap<usize, usize> = dst.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        src.iter()
            .map(|&s| {
                let mut row = vec![Q::zero(); dst.len()];
                for (&(_, t), c) in self.differential.range((s, 0)..=(s, usize::MAX)) {
                    if let Some(&j) = pos.get(&t) {
                        row[j] = c.clone();
                    }
                }
                row
            })
            .collect()
    }

    fn homology_where(&self, keep: &dyn Fn(&Generator) -> bool) -> BTreeMap<i32, usize> {
        let degrees: BTreeSet<i32> = self
            .generators
            .iter()
            .filter(|g| keep(g))
            .map(|g| g.maslov)
            .collect();
        degrees
            .into_iter()
            .map(|m| {
                let here = self.in_degree(m, keep);
                let below = self.in_degree(m - 1, keep);
                let above = self.in_degree(m + 1, keep);
                let out_rank = linalg::rank(&self.block(&here, &below));
                let in_rank = linalg::rank(&self.block(&above, &here));
                (m, here.len() - out_rank - in_rank)
            })
            .collect()
    }

    /// Rank of homology in every Maslov grading that has generators.
    pub fn homology(&self) -> BTreeMap<i32, usize> {
        self.homology_where(&|_| true)
    }

    /// Homology of the subcomplex `{A ≤ m}`.
    pub fn sub_homology(&self, m: i32) -> BTreeMap<i32, usize> {
        self.homology_where(&|g| g.alexander <= m)
    }

    fn check_unknot_type(&self) -> Result<(), ComplexError> {
        let h = self.homology();
        let total: usize = h.values().sum();
        if total != 1 || h.get(&0) != Some(&1) {
            return Err(ComplexError::NotUnknotType(format!("{h:?}")));
        }
        Ok(())
    }

    /// Whether `H(F_m) -> H(C)` is non-zero.
    pub fn iota_nontrivial(&self, m: i32) -> Result<bool, ComplexError> {
        self.check_unknot_type()?;
        Ok(self.iota_unchecked(m))
    }

    fn iota_unchecked(&self, m: i32) -> bool {
        let deg0 = self.in_degree(0, &|_| true);
        let deg1 = self.in_degree(1, &|_| true);
        let sub0 = self.in_degree(0, &|g| g.alexander <= m);
        let below = self.in_degree(-1, &|_| true);
        // Cycles of F_m in degree 0, as vectors over all degree-0 generators.
        let dmat = self.block(&sub0, &below);
        let mut transposed = vec![vec![Q::zero(); sub0.len()]; below.len()];
        for (i, row) in dmat.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                transposed[j][i] = c.clone();
            }
        }
        let pos: HashMap<usize, usize> = deg0.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let cycles: Vec<Vec<Q>> = linalg::kernel(&transposed, sub0.len())
            .into_iter()
            .map(|k| {
                let mut v = vec![Q::zero(); deg0.len()];
                for (i, c) in k.into_iter().enumerate() {
                    v[pos[&sub0[i]]] = c;
                }
                v
            })
            .collect();
        let boundaries = self.block(&deg1, &deg0);
        let base = linalg::rank(&boundaries);
        let mut both = boundaries;
        both.extend(cycles);
        linalg::rank(&both) > base
    }

    /// `min { m : ι^m non-trivial }`.
    pub fn tau(&self) -> Result<i32, ComplexError> {
        self.check_unknot_type()?;
        let levels: BTreeSet<i32> = self.generators.iter().map(|g| g.alexander).collect();
        levels
            .into_iter()
            .find(|&m| self.iota_unchecked(m))
            .ok_or_else(|| {
                ComplexError::NotUnknotType("no filtration level carries the generator".into())
            })
    }

    /// Künneth product with the Leibniz differential.
    pub fn tensor(&self, other: &FilteredComplex) -> FilteredComplex {
        let n2 = other.len();
        let idx = |i: usize, j: usize| i * n2 + j;
        let mut gens = Vec::with_capacity(self.len() * n2);
        for a in &self.generators {
            for b in &other.generators {
                gens.push(Generator::new(
                    format!("{}⊗{}", a.label, b.label),
                    a.maslov + b.maslov,
                    a.alexander + b.alexander,
                ));
            }
        }
        let mut entries = Vec::new();
        for (&(f, t), c) in &self.differential {
            for j in 0..n2 {
                entries.push((idx(f, j), idx(t, j), c.clone()));
            }
        }
        for (i, a) in self.generators.iter().enumerate() {
            let sign = if a.maslov.rem_euclid(2) == 0 {
                Q::one()
            } else {
                -Q::one()
            };
            for (&(f, t), c) in &other.differential {
                entries.push((idx(i, f), idx(i, t), &sign * c));
            }
        }
        FilteredComplex::new(gens, entries).expect("tensor of complexes is a complex")
    }

    /// Dual complex: gradings and filtration negated, differential transposed.
    pub fn dual(&self) -> FilteredComplex {
        let gens = self
            .generators
            .iter()
            .map(|g| Generator::new(format!("{}*", g.label), -g.maslov, -g.alexander))
            .collect();
        let entries = self
            .differential
            .iter()
            .map(|(&(f, t), c)| (t, f, c.clone()));
        FilteredComplex::new(gens, entries).expect("dual of a complex is a complex")
    }

    /// Direct sum with the acyclic pair `x -> y`.
    pub fn with_acyclic_pair(&self, x: Generator, y: Generator) -> Result<Self, ComplexError> {
        let mut gens = self.generators.clone();
        let (xi, yi) = (gens.len(), gens.len() + 1);
        gens.push(x);
        gens.push(y);
        let mut entries: Vec<(usize, usize, Q)> = self
            .differential()
            .map(|(f, t, c)| (f, t, c.clone()))
            .collect();
        entries.push((xi, yi, Q::one()));
        FilteredComplex::new(gens, entries)
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile {
            generators: self.generators.clone(),
            differential: self
                .differential
                .iter()
                .map(|(&(f, t), c)| DifferentialEntry {
                    from: self.generators[f].label.clone(),
                    to: self.generators[t].label.clone(),
                    coeff: Coefficient(c.clone()),
                })
                .collect(),
        }
    }
}

/// Coefficient serialized as `"p/q"`; integers are also accepted on input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficient(pub BigRational);

impl Serialize for Coefficient {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(i) => Ok(Coefficient(Q::from_integer(i.into()))),
            Raw::Str(s) => BigRational::from_str(s.trim())
                .map(Coefficient)
                .map_err(|_| serde::de::Error::custom(format!("bad coefficient `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialEntry {
    pub from: String,
    pub to: String,
    pub coeff: Coefficient,
}

/// The JSON complex format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub differential: Vec<DifferentialEntry>,
}

impl ComplexFile {
    pub fn parse(text: &str) -> Result<Self, ComplexError> {
        serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))
    }

    pub fn into_complex(self) -> Result<FilteredComplex, ComplexError> {
        let entries: Vec<(&str, &str, Q)> = self
            .differential
            .iter()
            .map(|e| (e.from.as_str(), e.to.as_str(), e.coeff.0.clone()))
            .collect();
        FilteredComplex::from_labels(self.generators.clone(), &entries)
    }
}

/// One generator at `(M, A) = (0, 0)`.
pub fn unknot_model() -> FilteredComplex {
    FilteredComplex::new(vec![Generator::new("x", 0, 0)], []).unwrap()
}

/// `a(0, 1), b(-1, 0), c(-2, -1)` with `∂b = c`.
pub fn trefoil_model() -> FilteredComplex {
    FilteredComplex::from_labels(
        vec![
            Generator::new("a", 0, 1),
            Generator::new("b", -1, 0),
            Generator::new("c", -2, -1),
        ],
        &[("b", "c", Q::one())],
    )
    .unwrap()
}
