//! Text formats: code spec files, weight-distribution files and result CSVs.
//!
//! A code spec is a list of `key: value` lines; `#` starts a comment line.
//!
//! ```text
//! name: hamming
//! n: 7
//! idual: 6,5,3,0
//! dual_min_weight: 4
//! ```

use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::bounds::BoundCurve;
use crate::codes::{CodeContext, CyclicCode, WeightDistribution};
use crate::cyclotomic::is_idempotent;
use crate::error::{Error, Result};
use crate::gf2poly::BinaryPolynomial;
use crate::simulator::SimulationRecord;

pub const RESULTS_HEADER: &str =
    "ebno_db,frames,bit_errors,frame_errors,ber,fer,avg_iterations,avg_stages,lms_decisions,undetected_errors,stop_rule";

pub const BOUND_HEADER: &str = "ebno_db,ber_ub,fer_ub,truncation_delta_max";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub name: Option<String>,
    pub n: usize,
    pub idual: BinaryPolynomial,
    pub dual_min_weight: Option<usize>,
}

impl CodeSpec {
    pub fn from_code(code: &CyclicCode, name: Option<String>) -> Self {
        Self {
            name,
            n: code.n(),
            idual: code.idual().clone(),
            dual_min_weight: code.dual_min_weight(),
        }
    }

    /// Parses and validates: exponents distinct and below `n`, and the
    /// polynomial idempotent modulo `x^n + 1`.
    pub fn parse(text: &str) -> Result<Self> {
        let (mut name, mut n, mut idual, mut dual_min_weight) = (None, None, None, None);
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(line_no, "expected `key: value`"))?;
            let value = value.trim();
            let dup = || Error::parse(line_no, format!("duplicate key `{}`", key.trim()));
            match key.trim() {
                "name" => {
                    if name.replace(value.to_string()).is_some() {
                        return Err(dup());
                    }
                }
                "n" => {
                    let v = value
                        .parse::<usize>()
                        .map_err(|e| Error::parse(line_no, format!("n: {e}")))?;
                    if n.replace((v, line_no)).is_some() {
                        return Err(dup());
                    }
                }
                "idual" => {
                    let p = value
                        .parse::<BinaryPolynomial>()
                        .map_err(|e| Error::parse(line_no, e.to_string()))?;
                    if idual.replace((p, line_no)).is_some() {
                        return Err(dup());
                    }
                }
                "dual_min_weight" => {
                    let v = value
                        .parse::<usize>()
                        .map_err(|e| Error::parse(line_no, format!("dual_min_weight: {e}")))?;
                    if dual_min_weight.replace(v).is_some() {
                        return Err(dup());
                    }
                }
                other => return Err(Error::parse(line_no, format!("unknown key `{other}`"))),
            }
        }
        let (n, _) = n.ok_or_else(|| Error::parse(0, "missing `n`"))?;
        let (idual, idual_line) = idual.ok_or_else(|| Error::parse(0, "missing `idual`"))?;
        crate::gf2poly::check_block_length(n)?;
        if idual.degree().is_some_and(|d| d >= n) {
            return Err(Error::parse(idual_line, format!("exponent {} not below n = {n}", idual.degree().unwrap())));
        }
        if !is_idempotent(&idual, n)? {
            return Err(Error::NotIdempotent(n));
        }
        Ok(Self {
            name,
            n,
            idual,
            dual_min_weight,
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            let _ = writeln!(out, "name: {name}");
        }
        let _ = writeln!(out, "n: {}", self.n);
        let _ = writeln!(out, "idual: {}", self.idual);
        if let Some(w) = self.dual_min_weight {
            let _ = writeln!(out, "dual_min_weight: {w}");
        }
        out
    }

    pub fn into_code(self, ctx: &CodeContext) -> Result<CyclicCode> {
        if ctx.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: ctx.n(),
            });
        }
        let code = CyclicCode::from_dual_idempotent(&self.idual, ctx)?;
        Ok(match self.dual_min_weight {
            Some(w) => code.with_dual_min_weight(w),
            None => code,
        })
    }

    /// Builds the coset context and the code in one step.
    pub fn build(self) -> Result<CyclicCode> {
        let ctx = CodeContext::new(self.n)?;
        self.into_code(&ctx)
    }
}

/// Parses `delta,count` lines into a (possibly truncated) distribution.
pub fn parse_weights(text: &str, n: usize) -> Result<WeightDistribution> {
    let mut counts = vec![BigUint::from(0u8); n + 1];
    let mut seen = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (d, a) = line
            .split_once(',')
            .ok_or_else(|| Error::parse(line_no, "expected `delta,count`"))?;
        let d: usize = d
            .trim()
            .parse()
            .map_err(|e| Error::parse(line_no, format!("delta: {e}")))?;
        let a: BigUint = a
            .trim()
            .parse()
            .map_err(|e| Error::parse(line_no, format!("count: {e}")))?;
        if d > n {
            return Err(Error::parse(line_no, format!("delta {d} exceeds n = {n}")));
        }
        counts[d] = a;
        seen += 1;
    }
    if seen == 0 {
        return Err(Error::invalid("weights file has no entries"));
    }
    WeightDistribution::new(n, counts)
}

pub fn render_weights(dist: &WeightDistribution) -> String {
    let mut out = String::new();
    for (d, a) in dist.counts().iter().enumerate() {
        if *a != BigUint::from(0u8) {
            let _ = writeln!(out, "{d},{a}");
        }
    }
    out
}

pub fn results_csv(records: &[SimulationRecord]) -> String {
    let mut out = format!("{RESULTS_HEADER}\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{:e},{:e},{},{},{},{},{}",
            r.ebno_db,
            r.frames,
            r.bit_errors,
            r.frame_errors,
            r.ber,
            r.fer,
            r.avg_iterations,
            r.avg_stages,
            r.lms_decisions,
            r.undetected_errors,
            r.stop_rule.as_str()
        );
    }
    out
}

pub fn bound_csv(curve: &BoundCurve) -> String {
    let mut out = format!("{BOUND_HEADER}\n");
    let delta = curve.truncated_at.map(|d| d.to_string()).unwrap_or_default();
    for p in &curve.points {
        let _ = writeln!(out, "{},{:e},{:e},{}", p.ebno_db, p.ber_bound, p.fer_bound, delta);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::StopRule;

    const HAMMING: &str = "# test code\nname: hamming\nn: 7\nidual: 6,5,3,0\n";

    #[test]
    fn spec_round_trip() {
        let spec = CodeSpec::parse(HAMMING).unwrap();
        assert_eq!(spec.name.as_deref(), Some("hamming"));
        assert_eq!(spec.n, 7);
        assert_eq!(CodeSpec::parse(&spec.render()).unwrap(), spec);
        let code = spec.clone().build().unwrap();
        assert_eq!(code.k(), 4);
        assert_eq!(CodeSpec::from_code(&code, spec.name.clone()), spec);
    }

    #[test]
    fn spec_rejections() {
        for bad in [
            "n: 7\nidual: 6,5,0\n",
            "n: 7\nidual: 6,6,5,3,0\n",
            "n: 7\nidual: 9,0\n",
            "n: 8\nidual: 0\n",
            "n: 7\n",
            "idual: 0\n",
            "n: 7\nn: 7\nidual: 6,5,3,0\n",
            "n 7\n",
            "n: 7\nidual: 6,5,3,0\ncolour: red\n",
        ] {
            assert!(CodeSpec::parse(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn weights_files() {
        let d = parse_weights("# A_d\n3,7\n4,7\n7,1\n", 7).unwrap();
        assert_eq!(d.count(3), &BigUint::from(7u8));
        assert_eq!(render_weights(&d), "3,7\n4,7\n7,1\n");
        assert!(parse_weights("", 7).is_err());
        assert!(parse_weights("# only comments\n", 7).is_err());
        assert!(parse_weights("8,1\n", 7).is_err());
        assert!(parse_weights("3;7\n", 7).is_err());
    }

    #[test]
    fn csv_layout() {
        let rec = SimulationRecord {
            ebno_db: 4.5,
            frames: 10,
            bit_errors: 3,
            frame_errors: 1,
            ber: 3.0 / 70.0,
            fer: 0.1,
            avg_iterations: 1.5,
            avg_stages: 1.0,
            lms_decisions: 0,
            undetected_errors: 1,
            stop_rule: StopRule::MaxFrames,
        };
        let csv = results_csv(&[rec]);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(RESULTS_HEADER));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row.len(), 11);
        assert_eq!(row[0], "4.5");
        assert_eq!(row[5].parse::<f64>().unwrap(), 0.1);
        assert_eq!(row[10], "max_frames");
    }
}
