use std::collections::BTreeMap;
use std::fmt;

use super::{count_points, lefschetz_trace, CountError};
use crate::e8::LatticeAut;
use crate::io::{self, content_lines, ParseError};
use crate::sextic::WeightedSextic;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileEntry {
    pub k: u32,
    pub count: u64,
    pub trace: i64,
}

/// Point counts of one surface over `F_{q^k}` for a divisor-closed set of
/// exponents, and what they determine about the Frobenius action on `E8`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusProfile {
    q: u64,
    entries: Vec<ProfileEntry>,
    order: Option<u32>,
    det: Option<i8>,
}

impl FrobeniusProfile {
    pub fn from_counts(q: u64, counts: &[(u32, u64)]) -> Result<Self, CountError> {
        let mut by_k = BTreeMap::new();
        for &(k, count) in counts {
            if k == 0 || by_k.insert(k, count).is_some_and(|c| c != count) {
                return Err(CountError::Inconsistent(format!("exponent {k} is zero or repeated with different counts")));
            }
        }
        if !by_k.contains_key(&1) {
            return Err(CountError::Inconsistent("exponent 1 is missing".into()));
        }
        if let Some(k) = by_k.keys().find(|&&k| (1..k).any(|d| k % d == 0 && !by_k.contains_key(&d))) {
            return Err(CountError::Inconsistent(format!("exponents are not closed under divisors of {k}")));
        }
        let entries = by_k
            .into_iter()
            .map(|(k, count)| Ok(ProfileEntry { k, count, trace: lefschetz_trace(count, q.pow(k))? }))
            .collect::<Result<Vec<_>, CountError>>()?;
        let trivial: Vec<u32> = entries.iter().filter(|e| e.trace == 8).map(|e| e.k).collect();
        for e in &entries {
            if let Some(&d) = trivial.iter().find(|&&d| e.k % d == 0 && e.trace != 8) {
                return Err(CountError::Inconsistent(format!("t_{d} = 8 but t_{} = {}", e.k, e.trace)));
            }
        }
        let order = trivial.first().copied();
        if let Some(m) = order {
            let trace_of = |k: u32| entries.iter().find(|e| e.k == k).map(|e| e.trace);
            for e in &entries {
                let r = e.k % m;
                if r != 0 && trace_of(r).is_some_and(|t| t != e.trace) {
                    return Err(CountError::Inconsistent(format!("t_{} differs from t_{r} although the order is {m}", e.k)));
                }
            }
        }
        let det = order.and_then(|m| {
            if m % 2 == 1 {
                return Some(1);
            }
            let half = m / 2;
            if half % 2 == 0 {
                return None;
            }
            let t = entries.iter().find(|e| e.k == half)?.trace;
            Some(if ((8 - t) / 2) % 2 == 0 { 1 } else { -1 })
        });
        Ok(Self { q, entries, order, det })
    }

    /// The profile a Frobenius acting on `Pic` through `m` would produce:
    /// `|X(F_{q^k})| = q^{2k} + q^k (tr(m^k) + 1) + 1`.
    pub fn from_lattice_element(q: u64, m: &LatticeAut, exponents: &[u32]) -> Result<Self, CountError> {
        let counts: Vec<(u32, u64)> = exponents
            .iter()
            .map(|&k| {
                let qk = q.pow(k) as i128;
                (k, (qk * qk + qk * (m.pow(k).trace() as i128 + 1) + 1) as u64)
            })
            .collect();
        Self::from_counts(q, &counts)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn entries(&self) -> &[ProfileEntry] {
        &self.entries
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }

    pub fn det(&self) -> Option<i8> {
        self.det
    }

    pub fn trace(&self, k: u32) -> Option<i64> {
        self.entries.iter().find(|e| e.k == k).map(|e| e.trace)
    }

    /// Without a recorded `t_k = 8`, the order divides none of these exponents.
    pub fn excluded_divisors(&self) -> Vec<u32> {
        if self.order.is_some() {
            return Vec::new();
        }
        self.entries.iter().map(|e| e.k).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("profile q={}\n", self.q);
        for e in &self.entries {
            out.push_str(&format!("k={} count={} trace={}\n", e.k, e.count, e.trace));
        }
        if self.order.is_none() {
            let ks: Vec<String> = self.excluded_divisors().iter().map(|k| k.to_string()).collect();
            out.push_str(&format!("# order divides none of {}\n", ks.join(",")));
        }
        let order = self.order.map_or("unknown".to_string(), |m| m.to_string());
        let det = match self.det {
            Some(1) => "+1",
            Some(_) => "-1",
            None => "unknown",
        };
        out.push_str(&format!("order={order} det={det}\n"));
        out
    }

    /// Parses a profile and checks the recorded traces, order and determinant
    /// against the ones the counts determine.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(text).peekable();
        let (hl, header) = lines.next().ok_or_else(|| ParseError::new(1, 1, "empty profile"))?;
        let fields = io::keyed_fields(hl, header.trim(), "profile")?;
        let q_tok = io::lookup(&fields, "q", hl)?;
        let q: u64 = io::parse_num(header, q_tok, hl)?;
        let mut counts = Vec::new();
        let mut traces = Vec::new();
        let mut summary = None;
        for (no, line) in lines {
            let tokens: Vec<(&str, &str)> = line
                .split_whitespace()
                .map(|t| t.split_once('=').ok_or_else(|| ParseError::new(no, io::column_of(line, t), "expected key=value")))
                .collect::<Result<_, _>>()?;
            match tokens.as_slice() {
                [("k", k), ("count", c), ("trace", t)] if summary.is_none() => {
                    counts.push((io::parse_num(line, k, no)?, io::parse_num(line, c, no)?));
                    traces.push((no, io::parse_num::<i64>(line, t, no)?));
                }
                [("order", o), ("det", d)] if summary.is_none() => {
                    let order = if *o == "unknown" { None } else { Some(io::parse_num::<u32>(line, o, no)?) };
                    let det = match *d {
                        "+1" | "1" => Some(1),
                        "-1" => Some(-1),
                        "unknown" => None,
                        _ => return Err(ParseError::new(no, io::column_of(line, d), "det must be +1, -1 or unknown")),
                    };
                    summary = Some((no, order, det));
                }
                _ => return Err(ParseError::new(no, 1, "unexpected profile line")),
            }
        }
        let (sl, order, det) = summary.ok_or_else(|| ParseError::new(hl, 1, "missing order/det line"))?;
        let profile = Self::from_counts(q, &counts).map_err(|e| ParseError::new(hl, 1, e.to_string()))?;
        for ((no, t), (k, _)) in traces.into_iter().zip(&counts) {
            if profile.trace(*k) != Some(t) {
                return Err(ParseError::new(no, 1, format!("trace {t} does not match the count")));
            }
        }
        if profile.order != order || profile.det != det {
            return Err(ParseError::new(sl, 1, "order/det do not match the counts"));
        }
        Ok(profile)
    }
}

impl fmt::Display for FrobeniusProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn frobenius_profile(f: &WeightedSextic, exponents: &[u32], threads: usize) -> Result<FrobeniusProfile, CountError> {
    let p = f.prime()?;
    let counts = exponents.iter().map(|&k| Ok((k, count_points(f, k, threads)?))).collect::<Result<Vec<_>, CountError>>()?;
    FrobeniusProfile::from_counts(p as u64, &counts)
}

/// Which profile, if any, witnesses each of the three required Frobenius
/// elements: order 7; order 6 with determinant -1 and `t_2 = 5`; order 3
/// with `t_1 = -4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileCriterionReport {
    pub order7: Option<usize>,
    pub order6_det_minus1: Option<usize>,
    pub order3_trace_minus4: Option<usize>,
    pub distinct_fields: bool,
}

impl ProfileCriterionReport {
    pub fn passed(&self) -> bool {
        self.distinct_fields
            && self.order7.is_some()
            && self.order6_det_minus1.is_some()
            && self.order3_trace_minus4.is_some()
    }

    pub fn lines(&self) -> Vec<String> {
        let show = |name: &str, w: Option<usize>| match w {
            Some(i) => format!("{name}: PASS (profile {i})"),
            None => format!("{name}: FAIL"),
        };
        let mut out = vec![
            show("order 7", self.order7),
            show("order 6, det -1, t2 = 5", self.order6_det_minus1),
            show("order 3, t1 = -4", self.order3_trace_minus4),
        ];
        if !self.distinct_fields {
            out.push("profiles are not over distinct fields: FAIL".into());
        }
        out
    }
}

/// Searches for an assignment of the three conditions to three different profiles.
pub fn profile_criterion_check(profiles: &[FrobeniusProfile]) -> ProfileCriterionReport {
    let conditions: [fn(&FrobeniusProfile) -> bool; 3] = [
        |p| p.order == Some(7),
        |p| p.order == Some(6) && p.det == Some(-1) && p.trace(2) == Some(5),
        |p| p.order == Some(3) && p.trace(1) == Some(-4),
    ];
    let n = profiles.len();
    let mut best = [None; 3];
    let mut best_hits = 0;
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            for k in (0..n).filter(|&k| k != i && k != j) {
                let pick = [i, j, k];
                let hit: [Option<usize>; 3] = std::array::from_fn(|c| conditions[c](&profiles[pick[c]]).then_some(pick[c]));
                let hits = hit.iter().flatten().count();
                if hits > best_hits {
                    best_hits = hits;
                    best = hit;
                }
            }
        }
    }
    let mut qs: Vec<u64> = profiles.iter().map(|p| p.q).collect();
    qs.sort_unstable();
    qs.dedup();
    ProfileCriterionReport {
        order7: best[0],
        order6_det_minus1: best[1],
        order3_trace_minus4: best[2],
        distinct_fields: qs.len() == n,
    }
}
