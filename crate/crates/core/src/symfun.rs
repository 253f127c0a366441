//! Symmetric functions of `R` and their periodic profiles.
//!
//! A symmetric function is constant on each layer `L(n-d, d)`: the tuples of
//! `{1,2}^n` with exactly `d` twos. [`SymmetricFn`] stores one bit per layer,
//! indexed by `d`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, lcm};
use crate::error::{Error, Result};
use crate::table::TableFn;

/// Largest arity accepted when materialising a layer vector.
pub const MAX_LAYER_ARITY: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymmetricFn {
    layers: Vec<bool>,
}

impl SymmetricFn {
    /// `layers[d]` is the value on the layer with `d` twos; the arity is
    /// `layers.len() - 1`.
    pub fn new(layers: Vec<bool>) -> Result<Self> {
        if layers.len() < 2 {
            return Err(Error::InvalidProfile("arity must be positive".into()));
        }
        Ok(Self { layers })
    }

    pub fn from_layer_set(arity: usize, set: &[usize]) -> Result<Self> {
        let mut layers = vec![false; arity + 1];
        for &d in set {
            if d > arity {
                return Err(Error::InvalidProfile(format!(
                    "layer {d} exceeds arity {arity}"
                )));
            }
            layers[d] = true;
        }
        Self::new(layers)
    }

    pub fn zero(arity: usize) -> Result<Self> {
        Self::new(vec![false; arity + 1])
    }

    pub fn i(arity: usize) -> Result<Self> {
        Self::new(vec![true; arity + 1])
    }

    pub fn arity(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layers(&self) -> &[bool] {
        &self.layers
    }

    pub fn layer(&self, twos: usize) -> bool {
        self.layers.get(twos).copied().unwrap_or(false)
    }

    /// Indices `d` of the layers contained in `N_f`.
    pub fn layer_set(&self) -> Vec<usize> {
        self.layers
            .iter()
            .enumerate()
            .filter_map(|(d, &b)| b.then_some(d))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.layers.iter().all(|b| !b)
    }

    pub fn is_i(&self) -> bool {
        self.layers.iter().all(|&b| b)
    }

    /// Value on a tuple over `{0,1,2}`.
    pub fn eval(&self, tuple: &[u8]) -> Result<u8> {
        if tuple.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                got: tuple.len(),
            });
        }
        let mut twos = 0;
        let mut zero = false;
        for &v in tuple {
            match v {
                0 => zero = true,
                1 => {}
                2 => twos += 1,
                other => return Err(Error::InvalidValue(other)),
            }
        }
        Ok((!zero && self.layers[twos]) as u8)
    }

    pub fn to_table(&self) -> Result<TableFn> {
        TableFn::from_fn(self.arity(), |t| {
            self.layers[t.iter().filter(|&&v| v == 2).count()]
        })
    }

    /// `None` iff some layer of the table is not constant.
    pub fn from_table(table: &TableFn) -> Option<Self> {
        let n = table.arity();
        let mut layers: Vec<Option<bool>> = vec![None; n + 1];
        for (i, &b) in table.bits().iter().enumerate() {
            let d = i.count_ones() as usize;
            match layers[d] {
                None => layers[d] = Some(b),
                Some(v) if v != b => return None,
                Some(_) => {}
            }
        }
        Some(Self {
            layers: layers.into_iter().map(|v| v.unwrap_or(false)).collect(),
        })
    }

    pub fn period(&self) -> Option<PeriodicProfile> {
        detect_period(self)
    }
}

/// `(n, d_f, t_f)`: the function equal to `1` exactly on the layers
/// `d ≡ d_f (mod t_f)`, `d_f ≤ d ≤ n`.
///
/// Any valid triple is accepted. Single-layer functions are realised by many
/// periods, and [`PeriodicProfile::canonical`] picks the smallest one; two
/// profiles describe the same function iff their canonical forms are equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawProfile")]
pub struct PeriodicProfile {
    n: u64,
    d: u64,
    t: u64,
}

#[derive(Deserialize)]
struct RawProfile {
    n: u64,
    d: u64,
    t: u64,
}

impl TryFrom<RawProfile> for PeriodicProfile {
    type Error = Error;

    fn try_from(r: RawProfile) -> Result<Self> {
        Self::new(r.n, r.d, r.t)
    }
}

impl PeriodicProfile {
    pub fn new(n: u64, d: u64, t: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidProfile("arity must be positive".into()));
        }
        if t == 0 {
            return Err(Error::InvalidProfile("period must be positive".into()));
        }
        if d >= t {
            return Err(Error::InvalidProfile(format!("need d < t, got d={d} t={t}")));
        }
        if d > n {
            return Err(Error::InvalidProfile(format!("need d <= n, got d={d} n={n}")));
        }
        Ok(Self { n, d, t })
    }

    /// `i_n` as a profile.
    pub fn i(n: u64) -> Result<Self> {
        Self::new(n, 0, 1)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// `e_f = n - d_f`, the number of ones in the first layer.
    pub fn e(&self) -> u64 {
        self.n - self.d
    }

    pub fn layer_count(&self) -> u64 {
        (self.n - self.d) / self.t + 1
    }

    pub fn layers(&self) -> impl Iterator<Item = u64> {
        let (d, n, t) = (self.d, self.n, self.t);
        (0..self.layer_count()).map(move |i| d + i * t).take_while(move |&x| x <= n)
    }

    pub fn has_layer(&self, twos: u64) -> bool {
        twos <= self.n && twos % self.t == self.d
    }

    /// `(1^n) ∈ N_f`.
    pub fn has_all_ones(&self) -> bool {
        self.d == 0
    }

    /// `(2^n) ∈ N_f`.
    pub fn has_all_twos(&self) -> bool {
        self.has_layer(self.n)
    }

    pub fn is_i(&self) -> bool {
        self.t == 1
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical().t == self.t
    }

    /// Same function with the smallest admissible period.
    pub fn canonical(&self) -> Self {
        if self.d + self.t <= self.n {
            *self
        } else {
            self.canonical_single()
        }
    }

    fn canonical_single(self) -> Self {
        Self {
            t: (self.d + 1).max(self.n - self.d + 1),
            ..self
        }
    }

    /// `t_f / gcd(d_f, t_f)`.
    pub fn ratio(&self) -> u64 {
        self.t / gcd(self.d, self.t)
    }

    pub fn to_symmetric(&self) -> Result<SymmetricFn> {
        make_periodic(self.n, self.d, self.t)
    }

    pub fn to_table(&self) -> Result<TableFn> {
        self.to_symmetric()?.to_table()
    }
}

impl fmt::Display for PeriodicProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "periodic n={} d={} t={}", self.n, self.d, self.t)
    }
}

/// Every periodic function of arity `n`, once each, in canonical form,
/// ordered by `(d, t)`.
pub fn periodic_profiles(n: u64) -> Vec<PeriodicProfile> {
    let mut out = Vec::new();
    for d in 0..=n {
        for t in (d + 1)..=(n - d) {
            out.push(PeriodicProfile { n, d, t });
        }
        out.push(PeriodicProfile { n, d, t: 0 }.canonical_single());
    }
    out.sort_by_key(|p| (p.d, p.t));
    out
}

/// Layer vector of the periodic function `(n, d, t)`.
pub fn make_periodic(n: u64, d: u64, t: u64) -> Result<SymmetricFn> {
    let p = PeriodicProfile::new(n, d, t)?;
    if n > MAX_LAYER_ARITY {
        return Err(Error::CapExceeded(format!(
            "arity {n} exceeds {MAX_LAYER_ARITY}"
        )));
    }
    let mut layers = vec![false; n as usize + 1];
    for x in p.layers() {
        layers[x as usize] = true;
    }
    SymmetricFn::new(layers)
}

/// Canonical profile of `f`, or `None` when `f` is zero or its layer set is
/// not a residue class.
pub fn detect_period(f: &SymmetricFn) -> Option<PeriodicProfile> {
    let set = f.layer_set();
    let n = f.arity() as u64;
    let first = *set.first()? as u64;
    let t = match set.get(1) {
        Some(&second) => second as u64 - first,
        None => return Some(PeriodicProfile { n, d: first, t: 0 }.canonical_single()),
    };
    if first >= t {
        return None;
    }
    let profile = PeriodicProfile { n, d: first, t };
    let expected: Vec<usize> = profile.layers().map(|x| x as usize).collect();
    (expected == set).then_some(profile)
}

/// The function `h` with `N_h = ∩ N_{f_i}` together with its profile.
///
/// Every input must be periodic with `d_f = 0`. Returns `None` when the
/// intersection is empty.
pub fn nset_intersection(fs: &[SymmetricFn]) -> Result<Option<(SymmetricFn, PeriodicProfile)>> {
    let first = fs
        .first()
        .ok_or_else(|| Error::Precondition("empty input list".into()))?;
    let n = first.arity();
    for f in fs {
        if f.arity() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: f.arity(),
            });
        }
        match detect_period(f) {
            Some(p) if p.d == 0 => {}
            Some(p) => {
                return Err(Error::Precondition(format!(
                    "input has d_f = {}, expected 0",
                    p.d
                )))
            }
            None => return Err(Error::Precondition("input is not periodic".into())),
        }
    }
    let layers: Vec<bool> = (0..=n).map(|d| fs.iter().all(|f| f.layer(d))).collect();
    let h = SymmetricFn::new(layers)?;
    Ok(detect_period(&h).map(|p| (h, p)))
}

/// Period predicted for an intersection of `d = 0` functions: the lcm of the
/// input periods.
pub fn lcm_period(periods: &[u64]) -> u64 {
    periods.iter().fold(1, |acc, &t| lcm(acc, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_periodic_examples() {
        assert_eq!(make_periodic(5, 1, 2).unwrap().layer_set(), vec![1, 3, 5]);
        assert_eq!(make_periodic(3, 0, 1).unwrap(), SymmetricFn::i(3).unwrap());
        assert_eq!(make_periodic(4, 3, 4).unwrap().layer_set(), vec![3]);
    }

    #[test]
    fn make_periodic_rejects_bad_triples() {
        assert!(make_periodic(5, 2, 2).is_err());
        assert!(make_periodic(2, 3, 4).is_err());
        assert!(make_periodic(5, 0, 0).is_err());
        assert!(make_periodic(0, 0, 1).is_err());
    }

    #[test]
    fn detect_period_examples() {
        let i4 = SymmetricFn::i(4).unwrap();
        assert_eq!(detect_period(&i4), Some(PeriodicProfile::new(4, 0, 1).unwrap()));
        let even = SymmetricFn::from_layer_set(4, &[0, 2, 4]).unwrap();
        assert_eq!(detect_period(&even), Some(PeriodicProfile::new(4, 0, 2).unwrap()));
        let gap = SymmetricFn::from_layer_set(4, &[1, 2, 3, 4]).unwrap();
        assert_eq!(detect_period(&gap), None);
        assert_eq!(detect_period(&SymmetricFn::zero(3).unwrap()), None);
    }

    #[test]
    fn detect_period_rejects_offset_beyond_period() {
        // layers {3, 5}: step 2, but layer 1 is missing
        let f = SymmetricFn::from_layer_set(5, &[3, 5]).unwrap();
        assert_eq!(detect_period(&f), None);
        let f = SymmetricFn::from_layer_set(6, &[0, 2, 6]).unwrap();
        assert_eq!(detect_period(&f), None);
    }

    #[test]
    fn single_layer_gets_smallest_period() {
        let f = SymmetricFn::from_layer_set(2, &[0]).unwrap();
        assert_eq!(detect_period(&f), Some(PeriodicProfile::new(2, 0, 3).unwrap()));
        let f = SymmetricFn::from_layer_set(4, &[3]).unwrap();
        assert_eq!(detect_period(&f), Some(PeriodicProfile::new(4, 3, 4).unwrap()));
        let f = SymmetricFn::from_layer_set(4, &[1]).unwrap();
        assert_eq!(detect_period(&f), Some(PeriodicProfile::new(4, 1, 4).unwrap()));
        assert_eq!(
            PeriodicProfile::new(2, 0, 4).unwrap().canonical(),
            PeriodicProfile::new(2, 0, 3).unwrap()
        );
    }

    #[test]
    fn eval_examples() {
        let f = make_periodic(3, 1, 2).unwrap();
        assert_eq!(f.eval(&[2, 1, 1]).unwrap(), 1);
        assert_eq!(f.eval(&[0, 2, 2]).unwrap(), 0);
        assert_eq!(f.eval(&[2, 2, 1]).unwrap(), 0);
        assert!(f.eval(&[2, 2]).is_err());
    }

    #[test]
    fn intersection_examples() {
        let a = make_periodic(6, 0, 2).unwrap();
        let b = make_periodic(6, 0, 3).unwrap();
        let (h, p) = nset_intersection(&[a.clone(), b]).unwrap().unwrap();
        assert_eq!(h.layer_set(), vec![0, 6]);
        assert_eq!(p, PeriodicProfile::new(6, 0, 6).unwrap());

        let (h, _) = nset_intersection(&[a.clone(), a.clone()]).unwrap().unwrap();
        assert_eq!(h, a);

        let a = make_periodic(2, 0, 2).unwrap();
        let b = make_periodic(2, 0, 3).unwrap();
        let (h, p) = nset_intersection(&[a, b]).unwrap().unwrap();
        assert_eq!(h.layer_set(), vec![0]);
        assert_eq!(p, PeriodicProfile::new(2, 0, 3).unwrap());
    }

    #[test]
    fn intersection_errors() {
        assert!(nset_intersection(&[]).is_err());
        let a = make_periodic(4, 0, 2).unwrap();
        let b = make_periodic(5, 0, 2).unwrap();
        assert!(matches!(
            nset_intersection(&[a.clone(), b]),
            Err(Error::ArityMismatch { .. })
        ));
        let c = make_periodic(4, 1, 2).unwrap();
        assert!(nset_intersection(&[a.clone(), c]).is_err());
        let d = SymmetricFn::from_layer_set(4, &[0, 1, 4]).unwrap();
        assert!(nset_intersection(&[a, d]).is_err());
    }

    #[test]
    fn table_conversion() {
        assert!(SymmetricFn::i(2).unwrap().to_table().unwrap().is_i());
        let g = TableFn::new(2, vec![true, true, false, true]).unwrap();
        assert_eq!(SymmetricFn::from_table(&g), None);
        assert!(!make_periodic(3, 0, 2).unwrap().is_i());
        assert!(!SymmetricFn::zero(3).unwrap().is_i());
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(PeriodicProfile::new(5, 1, 4).unwrap().ratio(), 4);
        assert_eq!(PeriodicProfile::new(6, 2, 4).unwrap().ratio(), 2);
        assert_eq!(PeriodicProfile::new(4, 0, 4).unwrap().ratio(), 1);
    }

    #[test]
    fn profile_json_is_validated() {
        let p: PeriodicProfile = serde_json::from_str(r#"{"n":4,"d":0,"t":2}"#).unwrap();
        assert_eq!(p, PeriodicProfile::new(4, 0, 2).unwrap());
        assert!(serde_json::from_str::<PeriodicProfile>(r#"{"n":4,"d":2,"t":2}"#).is_err());
    }

    #[test]
    fn profile_enumeration_matches_layer_sets() {
        for n in 1..=8u64 {
            let listed = periodic_profiles(n);
            let mut found = Vec::new();
            for mask in 1u32..(1 << (n + 1)) {
                let layers = (0..=n).map(|d| mask >> d & 1 == 1).collect();
                if let Some(p) = detect_period(&SymmetricFn::new(layers).unwrap()) {
                    found.push(p);
                }
            }
            found.sort_by_key(|p| (p.d, p.t));
            assert_eq!(listed, found, "n = {n}");
            assert!(listed.iter().all(|p| p.is_canonical()));
        }
    }
}
