//! Verification suites: the n = 2 golden tables, agreement of the three ways
//! of computing c^λ(q), its value at q = 1, and the inversion formula.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::fock_infty::{infty_matrices, InftyMatrices};
use crate::fock_r::{FockR, WedgeVector};
use crate::golden::{self, GoldenData};
use crate::hecke_kl::{KlEngine, Sign};
use crate::laurent::Poly;
use crate::partitions::{from_quotient, partitions_of, Partition, Weight};
use crate::ribbon::qlr;
use crate::symfun::lr_product;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub inputs: String,
    pub expected: String,
    pub got: String,
    /// Where the expected value comes from.
    pub tag: String,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: usize,
    pub mismatches: Vec<Mismatch>,
    pub notes: Vec<String>,
    pub wall_time: Duration,
}

impl VerificationReport {
    fn new(suite: &str) -> Self {
        VerificationReport { suite: suite.into(), cases: 0, mismatches: Vec::new(), notes: Vec::new(), wall_time: Duration::ZERO }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.cases > 0
    }

    fn check(&mut self, inputs: impl FnOnce() -> String, expected: &Poly, got: &Poly, tag: &str) {
        self.cases += 1;
        if expected != got {
            self.mismatches.push(Mismatch { inputs: inputs(), expected: expected.to_string(), got: got.to_string(), tag: tag.into() });
        }
    }

    fn merge(&mut self, other: VerificationReport) {
        self.cases += other.cases;
        self.mismatches.extend(other.mismatches);
        self.notes.extend(other.notes);
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "suite": self.suite,
            "cases": self.cases,
            "passed": self.passed(),
            "seconds": self.wall_time.as_secs_f64(),
            "notes": self.notes,
            "mismatches": self.mismatches.iter().map(|m| serde_json::json!({
                "inputs": m.inputs, "expected": m.expected, "got": m.got, "tag": m.tag,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} cases, {} mismatches, {:.2}s",
            self.suite,
            self.cases,
            self.mismatches.len(),
            self.wall_time.as_secs_f64()
        )?;
        for note in &self.notes {
            writeln!(f, "  note: {}", note)?;
        }
        for m in self.mismatches.iter().take(20) {
            writeln!(f, "  {} [{}]: expected {}, got {}", m.inputs, m.tag, m.expected, m.got)?;
        }
        Ok(())
    }
}

fn timed(suite: &str, body: impl FnOnce(&mut VerificationReport) -> Result<()>) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut rep = VerificationReport::new(suite);
    body(&mut rep)?;
    rep.wall_time = start.elapsed();
    Ok(rep)
}

fn block_matrices(n: usize, sizes: &[usize]) -> Result<HashMap<usize, InftyMatrices>> {
    sizes.par_iter().map(|&k| Ok((k, infty_matrices(k, n)?))).collect()
}

fn sizes_of<T>(tables: &[T], size: impl Fn(&T) -> usize) -> Vec<usize> {
    let mut v: Vec<usize> = tables.iter().map(size).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Printed entries known to be wrong: (inputs, printed, correct).
/// The coefficient of q^-d in a G⁻ entry has sign (-1)^d, so -q^-2 cannot occur.
pub const GOLDEN_ERRATA: &[(&str, &str, &str)] = &[("G-_{(4,2)} at |(2,2,2))", "-q^-2", "q^-2")];

pub fn is_documented_misprint(m: &Mismatch) -> bool {
    GOLDEN_ERRATA.iter().any(|&(i, e, g)| m.inputs == i && m.expected == e && m.got == g)
}

/// Every printed G⁻ entry, plus zero coefficients outside each printed row set.
pub fn golden_minus(data: &GoldenData) -> Result<VerificationReport> {
    timed("golden-n2-minus", |rep| {
        let mats = block_matrices(data.n, &sizes_of(&data.minus, |t| t.size))?;
        for t in &data.minus {
            let m = &mats[&t.size];
            for (j, col) in t.columns.iter().enumerate() {
                let cj = m.index(col).expect("column is a partition of the size");
                for (i, row) in t.labels.iter().enumerate() {
                    let got = m.e.get(cj, m.index(row).expect("row label")).substitute_neg_inv();
                    rep.check(|| format!("G-_{{{}}} at |{})", col, row), &t.matrix[i][j], &got, "table G-");
                }
                for (i, other) in m.labels.iter().enumerate() {
                    if !t.labels.contains(other) {
                        let got = m.e.get(cj, i).clone();
                        rep.check(|| format!("G-_{{{}}} outside the table at |{})", col, other), &Poly::zero(), &got, "table G- support");
                    }
                }
            }
        }
        for m in rep.mismatches.iter_mut().filter(|m| is_documented_misprint(m)) {
            m.tag = "table G- (documented misprint)".into();
        }
        Ok(())
    })
}

/// Every displayed G⁺ entry, plus zero coefficients outside each printed weight space.
pub fn golden_plus(data: &GoldenData) -> Result<VerificationReport> {
    timed("golden-n2-plus", |rep| {
        let mats = block_matrices(data.n, &sizes_of(&data.plus, |t| t.size))?;
        let mut hidden = 0;
        for t in &data.plus {
            let m = &mats[&t.size];
            let idx: Vec<usize> = t.labels.iter().map(|l| m.index(l).expect("row label")).collect();
            for (j, &cj) in idx.iter().enumerate() {
                for (i, &ri) in idx.iter().enumerate() {
                    match &t.matrix[i][j] {
                        Some(expected) => {
                            rep.check(|| format!("G+_{{{}}} at |{})", t.labels[j], t.labels[i]), expected, m.d.get(ri, cj), "table G+")
                        }
                        None => hidden += 1,
                    }
                }
                for (i, other) in m.labels.iter().enumerate() {
                    if !t.labels.contains(other) {
                        rep.check(
                            || format!("G+_{{{}}} outside the table at |{})", t.labels[j], other),
                            &Poly::zero(),
                            m.d.get(i, cj),
                            "table G+ support",
                        );
                    }
                }
            }
        }
        if hidden > 0 {
            rep.notes.push(format!("{} entries are not displayed in the source and were skipped", hidden));
        }
        Ok(())
    })
}

pub fn golden_n2() -> Result<VerificationReport> {
    let data = golden::load();
    let start = Instant::now();
    let mut rep = golden_minus(&data)?;
    rep.merge(golden_plus(&data)?);
    rep.suite = "golden-n2".into();
    rep.wall_time = start.elapsed();
    Ok(rep)
}

/// All n-tuples of partitions of total size k.
pub fn quotient_tuples(n: usize, k: usize) -> Vec<Vec<Partition>> {
    let mut out: Vec<Vec<Partition>> = vec![vec![]];
    for slot in 0..n {
        let mut next = Vec::new();
        for t in &out {
            let used: usize = t.iter().map(Partition::size).sum();
            let sizes: Vec<usize> = if slot + 1 == n { vec![k - used] } else { (0..=k - used).collect() };
            for s in sizes {
                for p in partitions_of(s) {
                    let mut t = t.clone();
                    t.push(p);
                    next.push(t);
                }
            }
        }
        out = next;
    }
    out
}

fn show_tuple(q: &[Partition]) -> String {
    q.iter().map(|p| format!("({})", p)).collect::<Vec<_>>().join(";")
}

/// P⁻_{μ+ρ, nλ+ρ} at the smallest rank holding both, one engine per rank.
struct KlRoute {
    n: usize,
    engines: HashMap<usize, KlEngine>,
}

impl KlRoute {
    fn p(&mut self, mu: &Partition, lam: &Partition) -> Result<Poly> {
        let r = mu.len().max(lam.len()).max(1);
        let n = self.n;
        let e = match self.engines.entry(r) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(v) => v.insert(KlEngine::new(r, -(n as i64), Sign::Minus)?),
        };
        let rho = Weight::rho(r);
        e.kl(&(&mu.to_weight(r)? + &rho), &(&lam.scaled(n).to_weight(r)? + &rho))
    }
}

/// c^λ(q) by ribbon tableaux, by S_λ|ρ⟩ in ℱ_r, and by parabolic KL polynomials.
/// The KL route runs at rank max(ℓ(μ), ℓ(λ)); when the conjugate pair needs a
/// smaller rank it evaluates q^{(n−1)k}·P⁻_{μ′,nλ′}(q⁻¹) instead.
pub fn three_route(n: usize, max_total: usize) -> Result<VerificationReport> {
    timed(&format!("three-route n={}", n), |rep| {
        let mut kl = KlRoute { n, engines: HashMap::new() };
        let mut conjugated = 0;
        for k in 0..=max_total {
            let lams = partitions_of(k);
            let tuples = quotient_tuples(n, k);
            let mus: Vec<Partition> = tuples.iter().map(|q| from_quotient(q, n as i64)).collect::<Result<_>>()?;
            // One rank holds every μ, so each S_λ|ρ⟩ is computed once.
            let r = mus.iter().map(Partition::len).max().unwrap_or(0).max(k).max(1);
            let mut fock = FockR::new(n, r)?;
            let rho = Weight::rho(r);
            let vac = WedgeVector::basis(&rho, n)?;
            let schur: Vec<WedgeVector> = lams.iter().map(|l| fock.schur_operator(l, &vac)).collect::<Result<_>>()?;
            for (q, mu) in tuples.iter().zip(&mus) {
                let ribbon = qlr(q, n)?;
                let mu_w = &mu.to_weight(r)? + &rho;
                for (lam, s) in lams.iter().zip(&schur) {
                    let a = ribbon.get(lam).cloned().unwrap_or_default();
                    let b = s.coeff(&mu_w).substitute_neg_inv();
                    let direct = mu.len().max(lam.len());
                    let (mc, lc) = (mu.conjugate(), lam.conjugate());
                    let c = if mc.len().max(lc.len()) < direct {
                        conjugated += 1;
                        kl.p(&mc, &lc)?.bar().shift(((n - 1) * k) as i64)
                    } else {
                        kl.p(mu, lam)?
                    };
                    let inputs = || format!("n={} quotient {} λ=({})", n, show_tuple(q), lam);
                    rep.check(inputs, &a, &b, "ribbon vs Schur operator");
                    rep.check(inputs, &a, &c, "ribbon vs parabolic KL");
                }
            }
        }
        rep.notes.push(format!("{} KL evaluations used the conjugate pair", conjugated));
        Ok(())
    })
}

/// c^λ(1) against the Littlewood-Richardson multiplicity of s_λ in Π s_{μ⁽ⁱ⁾}.
pub fn q_one(n: usize, max_total: usize) -> Result<VerificationReport> {
    timed(&format!("q=1 n={}", n), |rep| {
        for k in 0..=max_total {
            for q in quotient_tuples(n, k) {
                let c = qlr(&q, n)?;
                let lr = lr_product(&q);
                for lam in partitions_of(k) {
                    let got = Poly::constant(c.get(&lam).map(Poly::eval_at_one).unwrap_or_default());
                    let expected = Poly::constant(lr.get(&lam).cloned().unwrap_or_default());
                    rep.check(|| format!("n={} quotient {} λ=({})", n, show_tuple(&q), lam), &expected, &got, "LR rule");
                }
            }
        }
        Ok(())
    })
}

/// J_k = D_k for every k ≤ max_k.
pub fn inversion(n: usize, max_k: usize) -> Result<VerificationReport> {
    timed(&format!("inversion n={}", n), |rep| {
        let mats: Vec<InftyMatrices> = (0..=max_k).into_par_iter().map(|k| infty_matrices(k, n)).collect::<Result<_>>()?;
        for m in &mats {
            let j = m.j()?;
            for a in 0..m.labels.len() {
                for b in 0..m.labels.len() {
                    rep.check(|| format!("n={} k={} ({}, {})", n, m.k, m.labels[a], m.labels[b]), m.d.get(a, b), j.get(a, b), "J = D");
                }
            }
        }
        Ok(())
    })
}
