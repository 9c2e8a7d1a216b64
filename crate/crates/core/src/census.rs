//! Exhaustive parameter censuses, single-instance reports and residue
//! table export.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{
    classify, cyclotomic_verdict, divisibility_table, kernel_verdict, NutVerdict, TablePoly,
    APPENDIX_MODULI,
};
use crate::cyclo::{
    circulant_nullity, cyclotomic_root_filter, t1_witness_poly, t4_witness_poly, SparseIntPoly,
};
use crate::error::{Error, Result};
use crate::exactla::{graph_kernel, KernelBasis};
use crate::voltage::{build_family, Family, FamilyParams, Graph};

/// One row of the census. Serialises to the CSV columns
/// `family,n,a,b,predicate,cyclotomic,kernel,nullity,agree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub family: Family,
    pub n: u64,
    pub a: u64,
    pub b: Option<u64>,
    pub predicate: bool,
    pub cyclotomic: Option<bool>,
    pub kernel: bool,
    pub nullity: usize,
    pub agree: bool,
}

impl CensusRecord {
    pub fn params(&self) -> FamilyParams {
        FamilyParams::new(self.family, self.n, self.a, self.b).expect("census params are valid")
    }

    fn sort_key(&self) -> (Family, u64, u64, Option<u64>) {
        (self.family, self.n, self.a, self.b)
    }
}

/// Everything computed for one parameter tuple.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub params: FamilyParams,
    pub graph: Graph,
    pub kernel: KernelBasis,
    pub predicate: NutVerdict,
    pub cyclotomic: Option<NutVerdict>,
    pub kernel_verdict: NutVerdict,
}

impl Evaluation {
    pub fn new(params: FamilyParams) -> Result<Self> {
        let graph = build_family(&params)?;
        let kernel = graph_kernel(&graph);
        Ok(Evaluation {
            predicate: classify(&params),
            cyclotomic: cyclotomic_verdict(&params),
            kernel_verdict: kernel_verdict(&kernel),
            params,
            graph,
            kernel,
        })
    }

    pub fn record(&self) -> CensusRecord {
        let predicate = self.predicate.is_nut;
        let cyclotomic = self.cyclotomic.as_ref().map(|v| v.is_nut);
        let kernel = self.kernel_verdict.is_nut;
        CensusRecord {
            family: self.params.family(),
            n: self.params.n(),
            a: self.params.a(),
            b: self.params.b(),
            predicate,
            cyclotomic,
            kernel,
            nullity: self.kernel.dimension(),
            agree: predicate == kernel && cyclotomic.is_none_or(|c| c == kernel),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NutCount {
    pub family: Family,
    pub n: u64,
    pub tuples: usize,
    pub nut: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub tuples: usize,
    pub nut: usize,
    pub per_family_n: Vec<NutCount>,
    pub disagreements: Vec<CensusRecord>,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub records: Vec<CensusRecord>,
    pub summary: Summary,
}

/// Every valid tuple of the given families for `1 <= n <= n_max` (families
/// with an `n/2` jump only see even `n`), sorted by `(family, n, a, b)`.
pub fn census_tuples(families: &[Family], n_max: u64) -> Vec<FamilyParams> {
    let families: BTreeSet<Family> = families.iter().copied().collect();
    let mut tuples: Vec<FamilyParams> = families
        .into_iter()
        .flat_map(|f| (1..=n_max).flat_map(move |n| f.enumerate(n)))
        .collect();
    tuples.sort();
    tuples
}

/// Evaluates every tuple on a pool of `workers` threads. Output order is
/// fixed by sorting after collection.
pub fn run_census(families: &[Family], n_max: u64, workers: usize) -> Result<Census> {
    if n_max < 2 {
        return Err(Error::InvalidParams(format!(
            "n_max must be >= 2, got {n_max}"
        )));
    }
    let tuples = census_tuples(families, n_max);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParams(format!("cannot start {workers} workers: {e}")))?;
    let mut records: Vec<CensusRecord> = pool.install(|| {
        tuples
            .par_iter()
            .map(|p| Evaluation::new(*p).map(|e| e.record()))
            .collect::<Result<_>>()
    })?;
    records.sort_by_key(CensusRecord::sort_key);
    let summary = summarize(&records);
    Ok(Census { records, summary })
}

pub fn summarize(records: &[CensusRecord]) -> Summary {
    let mut counts: BTreeMap<(Family, u64), (usize, usize)> = BTreeMap::new();
    for r in records {
        let slot = counts.entry((r.family, r.n)).or_default();
        slot.0 += 1;
        slot.1 += usize::from(r.kernel);
    }
    Summary {
        tuples: records.len(),
        nut: records.iter().filter(|r| r.kernel).count(),
        per_family_n: counts
            .into_iter()
            .map(|((family, n), (tuples, nut))| NutCount {
                family,
                n,
                tuples,
                nut,
            })
            .collect(),
        disagreements: records.iter().filter(|r| !r.agree).cloned().collect(),
    }
}

pub fn write_csv<W: Write>(records: &[CensusRecord], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(records: &[CensusRecord], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, records)?;
    writeln!(out)?;
    Ok(())
}

pub fn census_csv(records: &[CensusRecord]) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_csv(records, &mut buf)?;
    Ok(buf)
}

/// Full report on one family member.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub evaluation: Evaluation,
    pub witness: Option<SparseIntPoly>,
    pub root_orders: Option<BTreeSet<u64>>,
    /// Nullity from the representer polynomial, circulants only.
    pub circulant_nullity: Option<usize>,
}

impl CheckReport {
    pub fn kernel_vector(&self) -> Option<&[BigInt]> {
        match self.evaluation.kernel.vectors() {
            [v] => Some(v),
            _ => None,
        }
    }
}

/// First row of the circulant `C(n; a, n/2)`.
pub fn circulant_row(n: u64, a: u64) -> Vec<i64> {
    let n = n as usize;
    let a = a as usize;
    let mut row = vec![0i64; n];
    row[a % n] = 1;
    row[(n - a % n) % n] = 1;
    row[n / 2] = 1;
    row
}

pub fn check_one(params: FamilyParams) -> Result<CheckReport> {
    let evaluation = Evaluation::new(params)?;
    let (n, a) = (params.n(), params.a());
    let witness = match (params.family(), params.b()) {
        (Family::T1, Some(b)) => Some(t1_witness_poly(n, a, b)?),
        (Family::T4, Some(b)) => Some(t4_witness_poly(n, a, b)?),
        _ => None,
    };
    let root_orders = witness
        .as_ref()
        .map(|w| cyclotomic_root_filter(w, n))
        .transpose()?;
    let circulant_nullity = match params.family() {
        Family::Circulant => Some(circulant_nullity(&circulant_row(n, a))?),
        _ => None,
    };
    Ok(CheckReport {
        evaluation,
        witness,
        root_orders,
        circulant_nullity,
    })
}

fn write_verdict(f: &mut fmt::Formatter<'_>, label: &str, v: &NutVerdict) -> fmt::Result {
    write!(f, "{label:<11} nut = {}", v.is_nut)?;
    for (i, r) in v.reasons.iter().enumerate() {
        f.write_str(if i == 0 { "  (" } else { "; " })?;
        write!(f, "{r}")?;
        if i + 1 == v.reasons.len() {
            f.write_str(")")?;
        }
    }
    writeln!(f)
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.evaluation;
        writeln!(
            f,
            "graph       {} on {} vertices",
            e.params,
            e.graph.vertex_count()
        )?;
        writeln!(
            f,
            "structure   connected = {}, bipartite = {}, cubic = {}",
            e.graph.is_connected(),
            e.graph.is_bipartite(),
            e.graph.is_cubic()
        )?;
        write_verdict(f, "predicate", &e.predicate)?;
        match &e.cyclotomic {
            Some(v) => write_verdict(f, "cyclotomic", v)?,
            None => writeln!(f, "cyclotomic  n/a")?,
        }
        write_verdict(f, "kernel", &e.kernel_verdict)?;
        writeln!(f, "nullity     {}", e.kernel.dimension())?;
        if let Some(c) = self.circulant_nullity {
            writeln!(f, "circulant   representer nullity = {c}")?;
        }
        if let Some(w) = &self.witness {
            writeln!(f, "witness     {w}")?;
        }
        if let Some(roots) = &self.root_orders {
            let list: Vec<String> = roots.iter().map(u64::to_string).collect();
            writeln!(f, "root orders {{{}}}", list.join(", "))?;
        }
        if let Some(v) = self.kernel_vector() {
            let n = e.params.n() as usize;
            let blocks: Vec<String> = v
                .chunks(n)
                .map(|c| {
                    c.iter()
                        .map(BigInt::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            writeln!(f, "vector      {}", blocks.join(" | "))?;
        }
        Ok(())
    }
}

/// Kernel basis vectors, one integer per line, vectors separated by a
/// blank line.
pub fn kernel_text(kernel: &KernelBasis) -> String {
    kernel
        .vectors()
        .iter()
        .map(|v| v.iter().map(|x| format!("{x}\n")).collect::<String>())
        .collect::<Vec<_>>()
        .join("\n")
}

/// Residue tables as CSV `f,a_mod_f,b_mod_f`, sorted, header first.
pub fn appendix_csv(which: TablePoly) -> Result<String> {
    let mut out = String::from("f,a_mod_f,b_mod_f\n");
    for f in APPENDIX_MODULI {
        for (a, b) in divisibility_table(f, which)? {
            out.push_str(&format!("{f},{a},{b}\n"));
        }
    }
    Ok(out)
}

pub fn emit_appendix(which: TablePoly, out: &Path) -> Result<()> {
    std::fs::write(out, appendix_csv(which)?)?;
    Ok(())
}
