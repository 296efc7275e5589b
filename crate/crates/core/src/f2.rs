//! Subgroups of (Z/2)^r and their {+-1}-valued characters.
//!
//! Elements are bitmasks; bit i is the basis vector a_i. Subgroups and
//! characters are kept in reduced row echelon form (pivot = highest set bit),
//! which makes equality structural.

use crate::error::{Error, Result};
use crate::localfield::Sign;

fn pivot(v: u64) -> u32 {
    63 - v.leading_zeros()
}

/// Echelon rows with an attached value bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
struct Rows(Vec<(u64, bool)>);

impl Rows {
    fn reduce(&self, mut v: u64) -> (u64, bool) {
        let mut val = false;
        for &(row, bit) in &self.0 {
            if v >> pivot(row) & 1 == 1 {
                v ^= row;
                val ^= bit;
            }
        }
        (v, val)
    }

    /// Insert (v, val); returns Err(()) if it contradicts existing rows.
    fn insert(&mut self, v: u64, val: bool) -> std::result::Result<bool, ()> {
        let (r, rv) = self.reduce(v);
        let nv = val ^ rv;
        if r == 0 {
            return if nv { Err(()) } else { Ok(false) };
        }
        let pv = pivot(r);
        for row in self.0.iter_mut() {
            if row.0 >> pv & 1 == 1 {
                row.0 ^= r;
                row.1 ^= nv;
            }
        }
        let at = self
            .0
            .iter()
            .position(|&(row, _)| pivot(row) < pv)
            .unwrap_or(self.0.len());
        self.0.insert(at, (r, nv));
        Ok(true)
    }
}

/// A subgroup of (Z/2)^rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    rank: usize,
    rows: Rows,
}

impl Subgroup {
    pub fn full(rank: usize) -> Subgroup {
        Subgroup::generated(rank, (0..rank).map(|i| 1u64 << i))
    }

    pub fn trivial(rank: usize) -> Subgroup {
        Subgroup {
            rank,
            rows: Rows::default(),
        }
    }

    pub fn generated<I: IntoIterator<Item = u64>>(rank: usize, gens: I) -> Subgroup {
        assert!(
            rank <= 63,
            "component groups above rank 63 are not supported"
        );
        let mut rows = Rows::default();
        for g in gens {
            assert!(g >> rank == 0, "generator outside the ambient group");
            rows.insert(g, false).expect("no values to contradict");
        }
        Subgroup { rank, rows }
    }

    /// Kernel of a -> popcount(a & mask) mod 2.
    pub fn kernel_of(rank: usize, mask: u64) -> Subgroup {
        let mask = mask & ((1u64 << rank) - 1);
        if mask == 0 {
            return Subgroup::full(rank);
        }
        let p = pivot(mask);
        let gens = (0..rank as u32).filter(|&i| i != p).map(|i| {
            let e = 1u64 << i;
            if mask >> i & 1 == 1 {
                e | 1u64 << p
            } else {
                e
            }
        });
        Subgroup::generated(rank, gens)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.rows.0.len()
    }

    pub fn order(&self) -> u64 {
        1 << self.dim()
    }

    pub fn basis(&self) -> Vec<u64> {
        self.rows.0.iter().map(|r| r.0).collect()
    }

    pub fn contains(&self, v: u64) -> bool {
        self.rows.reduce(v).0 == 0
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.rows.0.iter().all(|r| other.contains(r.0))
    }

    /// All elements, in the order of binary counting over the echelon basis.
    pub fn elements(&self) -> Vec<u64> {
        let basis = self.basis();
        (0..self.order())
            .map(|mask| {
                basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0, |acc, (_, b)| acc ^ b)
            })
            .collect()
    }

    /// Index of self inside a supergroup.
    pub fn index_in(&self, sup: &Subgroup) -> u64 {
        1 << (sup.dim() - self.dim())
    }
}

/// A linear map between F_2-spaces given on basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub images: Vec<u64>,
}

impl Embedding {
    pub fn apply(&self, v: u64) -> u64 {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, _)| v >> i & 1 == 1)
            .fold(0, |acc, (_, w)| acc ^ w)
    }

    pub fn image_of(&self, sub: &Subgroup, target_rank: usize) -> Subgroup {
        Subgroup::generated(target_rank, sub.basis().into_iter().map(|v| self.apply(v)))
    }
}

/// A homomorphism from a subgroup of (Z/2)^rank to {+-1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignCharacter {
    rank: usize,
    rows: Rows,
}

impl SignCharacter {
    pub fn trivial(domain: &Subgroup) -> SignCharacter {
        SignCharacter {
            rank: domain.rank,
            rows: domain.rows.clone(),
        }
    }

    /// The character taking the given values on elements spanning `domain`.
    pub fn from_values(domain: &Subgroup, pairs: &[(u64, Sign)]) -> Result<SignCharacter> {
        let mut rows = Rows::default();
        for &(v, s) in pairs {
            if !domain.contains(v) {
                return Err(Error::OutsideDomain(format!("{v:#b}")));
            }
            rows.insert(v, s.is_minus()).map_err(|_| {
                Error::NotACharacter(format!("value {s} at {v:#b} contradicts earlier values"))
            })?;
        }
        if rows.0.len() != domain.dim() {
            return Err(Error::NotACharacter("values do not span the domain".into()));
        }
        Ok(SignCharacter {
            rank: domain.rank,
            rows,
        })
    }

    /// The character agreeing with `f`, verified on every element.
    pub fn from_fn<F>(domain: &Subgroup, f: F) -> Result<SignCharacter>
    where
        F: Fn(u64) -> Result<Sign>,
    {
        let pairs = domain
            .basis()
            .into_iter()
            .map(|v| Ok((v, f(v)?)))
            .collect::<Result<Vec<_>>>()?;
        let chi = SignCharacter::from_values(domain, &pairs)?;
        for e in domain.elements() {
            let got = f(e)?;
            if got != chi.eval(e)? {
                return Err(Error::NotACharacter(format!(
                    "value {got} at {e:#b} breaks multiplicativity"
                )));
            }
        }
        Ok(chi)
    }

    pub fn domain(&self) -> Subgroup {
        Subgroup {
            rank: self.rank,
            rows: Rows(self.rows.0.iter().map(|r| (r.0, false)).collect()),
        }
    }

    pub fn eval(&self, v: u64) -> Result<Sign> {
        let (r, val) = self.rows.reduce(v);
        if r != 0 {
            return Err(Error::OutsideDomain(format!("{v:#b}")));
        }
        Ok(Sign::from_parity(val))
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.0.iter().all(|r| !r.1)
    }

    pub fn mul(&self, other: &SignCharacter) -> Result<SignCharacter> {
        if self.domain() != other.domain() {
            return Err(Error::OutsideDomain(
                "characters on different domains".into(),
            ));
        }
        let pairs = self
            .rows
            .0
            .iter()
            .map(|&(v, _)| Ok((v, self.eval(v)? * other.eval(v)?)))
            .collect::<Result<Vec<_>>>()?;
        SignCharacter::from_values(&self.domain(), &pairs)
    }

    pub fn restrict(&self, sub: &Subgroup) -> Result<SignCharacter> {
        let pairs = sub
            .basis()
            .into_iter()
            .map(|v| Ok((v, self.eval(v)?)))
            .collect::<Result<Vec<_>>>()?;
        SignCharacter::from_values(sub, &pairs)
    }

    /// Pull back along an embedding into the space where `self` lives.
    pub fn pull_back(&self, emb: &Embedding, source: &Subgroup) -> Result<SignCharacter> {
        SignCharacter::from_fn(source, |v| self.eval(emb.apply(v)))
    }

    /// All characters of `target` whose pull-back along `emb` is `self`.
    pub fn extensions(&self, emb: &Embedding, target: &Subgroup) -> Result<Vec<SignCharacter>> {
        let mut rows = Rows::default();
        for &(v, _) in &self.rows.0 {
            let w = emb.apply(v);
            if !target.contains(w) {
                return Err(Error::OutsideDomain(format!("image {w:#b} of {v:#b}")));
            }
            rows.insert(w, self.eval(v)?.is_minus())
                .map_err(|_| Error::NotACharacter("embedding is not injective".into()))?;
        }
        let mut span = Rows(rows.0.iter().map(|&(v, _)| (v, false)).collect());
        let mut free = Vec::new();
        for b in target.basis() {
            if span
                .insert(b, false)
                .expect("fresh vectors cannot contradict")
            {
                free.push(b);
            }
        }
        let mut out = Vec::with_capacity(1 << free.len());
        for mask in 0..(1u64 << free.len()) {
            let mut r = rows.clone();
            for (i, &b) in free.iter().enumerate() {
                r.insert(b, mask >> i & 1 == 1)
                    .expect("free generators are independent");
            }
            out.push(SignCharacter {
                rank: target.rank,
                rows: r,
            });
        }
        Ok(out)
    }

    /// (element, value) over the whole domain.
    pub fn table(&self) -> Vec<(u64, Sign)> {
        self.domain()
            .elements()
            .into_iter()
            .map(|e| (e, self.eval(e).expect("element of the domain")))
            .collect()
    }
}
