//! `spectre`: command-line reports over the finite-spectral-triple library.
//!
//! Problem files are JSON documents with a `kind` discriminator:
//!
//! * `{"kind": "algebra", "summands": [{"ring": "C", "k": 1}, ...]}`
//! * `{"kind": "bimodule", "algebra": {...}, "matrix": [[...]]}`
//! * `{"kind": "pair", "algebra": {...}, "even": [[...]], "odd": [[...]]}`
//! * `{"kind": "signed", "algebra": {...}, "signed": [[...]]}`
//!
//! Exit codes: 0 = pass/info, 1 = a verification reported FAIL,
//! 2 = malformed input or unusable parameters. With `--json` the report is
//! printed as a single JSON document; identical inputs and seeds produce
//! byte-identical output.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use spectre_core::algebra::{Algebra, Ring, Summand};
use spectre_core::bimodule::{
    hat, imat_scale, imat_sub, imat_transpose, intersection_form, is_orientable,
    is_quasi_orientable, quasi_orientability_witness, restrict_pair, EvenPair, IMat,
    MultiplicityMatrix, SignedMultiplicityMatrix,
};
use spectre_core::ccm;
use spectre_core::classify::{
    classify_irreducible, compatible_grading_families, diag_grading, grading_type_a,
    grading_type_b_diagonal, grading_type_b_offdiagonal, identity_grading, is_separating,
    r_max, GradingFamily, OffDiagonalProblem,
};
use spectre_core::dirac::{
    brute_force_dirac_basis_commuting, conjugate_by_j, dirac_dim_even, dirac_dim_even_plain,
    dirac_dim_odd, dirac_dim_odd_plain, order_one_defect, random_dirac_even, random_dirac_odd,
};
use spectre_core::linalg::{cr, dagger, fro_norm, int_det, CMat};
use spectre_core::real_structure::{
    admissible_kos_even, admissible_kos_odd, canonical_even, canonical_odd, flip_partner,
    ko_signs, real_structure_defects, slots_of_ungraded, ulr_dim, ulr_fixed_dim_even,
    ulr_fixed_dim_odd, GradedBimodule, Slot,
};

// ---------------------------------------------------------------------------
// Command-line surface.
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(name = "spectre", version, about = "Structure reports for finite real spectral triples")]
struct Cli {
    /// Emit the full report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect an algebra file.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Inspect multiplicity data.
    Bimodule {
        #[command(subcommand)]
        cmd: BimoduleCmd,
    },
    /// Real structures per KO-dimension.
    Real {
        #[command(subcommand)]
        cmd: RealCmd,
    },
    /// Dirac operators and moduli dimensions.
    Dirac {
        #[command(subcommand)]
        cmd: DiracCmd,
    },
    /// Classification pipeline (irreducible triplets, gradings, rank maximization).
    Cc {
        #[command(subcommand)]
        cmd: CcCmd,
    },
    /// Standard-model fixture reproduction.
    Sm {
        #[command(subcommand)]
        cmd: SmCmd,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Summands, dimensions, and the representation spectrum.
    Info { file: String },
}

#[derive(Subcommand)]
enum BimoduleCmd {
    /// Orientability, intersection form, admissible KO-dimensions, dimensions.
    Check { file: String },
}

#[derive(Subcommand)]
enum RealCmd {
    /// KO-dimensions admitting a canonical real structure on this data.
    Admissible { file: String },
    /// Build the canonical real structure and report its block description.
    Canonical {
        file: String,
        #[arg(long)]
        ko: u8,
        /// Override for the floating-point checks (never for integer checks).
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
}

#[derive(Subcommand)]
enum DiracCmd {
    /// Structural moduli dimensions (per admissible KO-dimension, or one).
    Dims {
        file: String,
        #[arg(long)]
        ko: Option<u8>,
    },
    /// Assemble a random admissible Dirac operator and verify its laws.
    Random {
        file: String,
        #[arg(long)]
        ko: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Brute-force the Dirac space constrained to commute with central
    /// projections of the listed summands (default: all of them).
    Constrained {
        file: String,
        #[arg(long)]
        ko: u8,
        /// Comma-separated summand indices whose central projections the
        /// operators must commute with.
        #[arg(long, value_delimiter = ',')]
        central: Option<Vec<usize>>,
    },
}

#[derive(Subcommand)]
enum CcCmd {
    /// Irreducible triplets over an algebra at an odd KO-dimension.
    Classify {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        ko: u8,
    },
    /// Compatible grading families, with verified sample gradings.
    Gradings {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        ko: u8,
    },
    /// Exact rational rank-dimension profile and its argmax set.
    Maximize {
        #[arg(long, ignore_case = true)]
        k1: RingArg,
        #[arg(long, ignore_case = true)]
        k2: RingArg,
        #[arg(long)]
        r1: i64,
        #[arg(long)]
        r2: i64,
        /// Complementary eigenspace dimensions, for --all-domains.
        #[arg(long)]
        r1p: Option<i64>,
        #[arg(long)]
        r2p: Option<i64>,
        /// Evaluate all four domain/range eigenspace pairings.
        #[arg(long)]
        all_domains: bool,
    },
}

#[derive(Subcommand)]
enum SmCmd {
    /// Recompute the frozen standard-model multiplicity data and check it.
    Reproduce {
        #[arg(long, default_value_t = 1)]
        generations: i64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "UPPERCASE")]
enum RingArg {
    R,
    C,
    H,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::R => Ring::R,
            RingArg::C => Ring::C,
            RingArg::H => Ring::H,
        }
    }
}

// ---------------------------------------------------------------------------
// Problem files.
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SummandIn {
    ring: Ring,
    k: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraIn {
    summands: Vec<SummandIn>,
}

impl AlgebraIn {
    fn build(&self) -> Result<Algebra> {
        if self.summands.iter().any(|s| s.k == 0) {
            bail!("summand size k must be positive");
        }
        Ok(Algebra::new(
            self.summands.iter().map(|s| Summand { ring: s.ring, k: s.k }).collect(),
        ))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    #[allow(dead_code)]
    kind: String,
    summands: Vec<SummandIn>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BimoduleDoc {
    #[allow(dead_code)]
    kind: String,
    algebra: AlgebraIn,
    matrix: IMat,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairDoc {
    #[allow(dead_code)]
    kind: String,
    algebra: AlgebraIn,
    even: IMat,
    odd: IMat,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SignedDoc {
    #[allow(dead_code)]
    kind: String,
    algebra: AlgebraIn,
    signed: IMat,
}

enum Problem {
    Algebra(Algebra),
    Ungraded(MultiplicityMatrix),
    Graded(EvenPair),
    Signed(SignedMultiplicityMatrix),
}

fn load_value(path: &str) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
    serde_json::from_str(&text).map_err(|e| {
        anyhow!("{path}: malformed JSON at line {}, column {}", e.line(), e.column())
    })
}

fn load_problem(path: &str) -> Result<Problem> {
    let v = load_value(path)?;
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| anyhow!("{path}: missing string field \"kind\""))?
        .to_string();
    let schema_err = |e: serde_json::Error| anyhow!("{path}: schema violation: {e}");
    match kind.as_str() {
        "algebra" => {
            let d: AlgebraDoc = serde_json::from_value(v).map_err(schema_err)?;
            Ok(Problem::Algebra(AlgebraIn { summands: d.summands }.build()?))
        }
        "bimodule" => {
            let d: BimoduleDoc = serde_json::from_value(v).map_err(schema_err)?;
            let a = d.algebra.build()?;
            Ok(Problem::Ungraded(
                MultiplicityMatrix::new(a, d.matrix).map_err(|e| anyhow!("{path}: {e}"))?,
            ))
        }
        "pair" => {
            let d: PairDoc = serde_json::from_value(v).map_err(schema_err)?;
            let a = d.algebra.build()?;
            let even =
                MultiplicityMatrix::new(a.clone(), d.even).map_err(|e| anyhow!("{path}: {e}"))?;
            let odd = MultiplicityMatrix::new(a, d.odd).map_err(|e| anyhow!("{path}: {e}"))?;
            Ok(Problem::Graded(
                EvenPair::new(even, odd).map_err(|e| anyhow!("{path}: {e}"))?,
            ))
        }
        "signed" => {
            let d: SignedDoc = serde_json::from_value(v).map_err(schema_err)?;
            let a = d.algebra.build()?;
            Ok(Problem::Signed(
                SignedMultiplicityMatrix::new(a, d.signed).map_err(|e| anyhow!("{path}: {e}"))?,
            ))
        }
        other => bail!("{path}: unknown problem kind {other:?}"),
    }
}

fn load_algebra(path: &str) -> Result<Algebra> {
    match load_problem(path)? {
        Problem::Algebra(a) => Ok(a),
        _ => bail!("{path}: expected a problem file of kind \"algebra\""),
    }
}

fn brute_cap() -> usize {
    std::env::var("SPECTRE_MAX_BRUTE_DIM")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(40)
}

// ---------------------------------------------------------------------------
// Reports.
// ---------------------------------------------------------------------------

struct Report {
    /// "pass", "fail", or "info".
    status: &'static str,
    body: Map<String, Value>,
    lines: Vec<String>,
}

impl Report {
    fn new() -> Self {
        Report { status: "info", body: Map::new(), lines: vec![] }
    }

    fn set(&mut self, key: &str, v: Value) {
        self.body.insert(key.to_string(), v);
    }

    fn line(&mut self, s: String) {
        self.lines.push(s);
    }
}

fn imat_json(m: &IMat) -> Value {
    json!(m)
}

fn cmat_json(m: &CMat) -> Value {
    let rows: Vec<Value> = (0..m.nrows())
        .map(|i| {
            let row: Vec<Value> =
                (0..m.ncols()).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect();
            Value::Array(row)
        })
        .collect();
    Value::Array(rows)
}

fn imat_text(m: &IMat) -> String {
    m.iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("; ")
}

fn ring_name(r: Ring) -> &'static str {
    match r {
        Ring::R => "R",
        Ring::C => "C",
        Ring::H => "H",
    }
}

fn emit(cli: &Cli, report: &Report) {
    if cli.json {
        let mut body = report.body.clone();
        body.insert("status".into(), json!(report.status));
        println!("{}", serde_json::to_string_pretty(&Value::Object(body)).unwrap());
    } else {
        for l in &report.lines {
            println!("{l}");
        }
        println!("status: {}", report.status.to_uppercase());
    }
}

// ---------------------------------------------------------------------------
// Subcommand implementations.
// ---------------------------------------------------------------------------

fn algebra_info(path: &str) -> Result<Report> {
    let a = load_algebra(path)?;
    let mut rep = Report::new();
    let summands: Vec<Value> = a
        .summands
        .iter()
        .map(|s| {
            json!({
                "ring": ring_name(s.ring),
                "k": s.k,
                "irrep_dim": s.n(),
                "minimal_trace": s.tau(),
                "dim_real": s.dim_real(),
            })
        })
        .collect();
    let spectrum: Vec<Value> = a
        .spectrum()
        .iter()
        .map(|p| {
            json!({
                "summand": p.summand_index,
                "conjugate": p.conjugate,
                "n": a.n_of(*p),
            })
        })
        .collect();
    for s in &a.summands {
        rep.line(format!(
            "summand M_{}({}): irrep dim {}, real dim {}",
            s.k,
            ring_name(s.ring),
            s.n(),
            s.dim_real()
        ));
    }
    rep.line(format!("real dimension: {}", a.dim_real()));
    rep.line(format!("spectrum size: {}", a.spectrum_size()));
    rep.set("summands", Value::Array(summands));
    rep.set("spectrum", Value::Array(spectrum));
    rep.set("dim_real", json!(a.dim_real()));
    Ok(rep)
}

fn witness_1based(w: Option<(usize, usize)>) -> Value {
    match w {
        Some((i, j)) => json!([i + 1, j + 1]),
        None => Value::Null,
    }
}

fn check_pair(rep: &mut Report, pair: &EvenPair) {
    let qo = is_quasi_orientable(pair);
    let witness = quasi_orientability_witness(pair);
    rep.set("quasi_orientable", json!(qo));
    rep.set("quasi_orientability_witness", witness_1based(witness));
    rep.line(format!("quasi-orientable: {qo}"));
    if let Some((i, j)) = witness {
        rep.line(format!("  overlapping support at spectrum entry ({}, {})", i + 1, j + 1));
    }
    if qo {
        match SignedMultiplicityMatrix::from_pair(pair) {
            Ok(mu) => {
                let (orient, signs) = is_orientable(&mu);
                rep.set("orientable", json!(orient));
                rep.line(format!("orientable: {orient}"));
                if let Some(s) = signs {
                    rep.set("orientation_signs", imat_json(&s));
                }
            }
            Err(e) => {
                rep.set("orientable", Value::Null);
                rep.line(format!("orientable: not defined ({e})"));
            }
        }
    } else {
        rep.set("orientable", json!(false));
        rep.line("orientable: false (not quasi-orientable)".into());
    }
    let form = intersection_form(pair);
    rep.set("intersection_form", imat_json(&form.form));
    rep.set("intersection_determinant", json!(form.determinant as i64));
    rep.set("poincare", json!(form.poincare));
    rep.line(format!("intersection form: {}", imat_text(&form.form)));
    rep.line(format!("Poincare duality: {}", form.poincare));
    let kos = admissible_kos_even(pair);
    rep.set("admissible_ko", json!(kos));
    rep.line(format!("admissible even KO-dimensions: {kos:?}"));
    let total = pair.even.total_dimension() + pair.odd.total_dimension();
    rep.set("total_dimension", json!(total));
    rep.set("dirac_dim_plain", json!(dirac_dim_even_plain(pair)));
    let mut per_ko = Map::new();
    for ko in kos {
        per_ko.insert(
            ko.to_string(),
            json!({
                "dirac_dim": dirac_dim_even(pair, ko).unwrap(),
                "ulr_fixed_dim": ulr_fixed_dim_even(pair, ko).unwrap(),
            }),
        );
    }
    rep.set("per_ko", Value::Object(per_ko));
}

fn bimodule_check(path: &str) -> Result<Report> {
    let mut rep = Report::new();
    match load_problem(path)? {
        Problem::Algebra(_) => bail!("{path}: expected multiplicity data, got an algebra file"),
        Problem::Ungraded(m) => {
            rep.set("kind", json!("bimodule"));
            rep.set("symmetric", json!(m.is_symmetric()));
            rep.set("total_dimension", json!(m.total_dimension()));
            rep.set("ulr_dim", json!(ulr_dim(&m)));
            rep.set("dirac_dim_plain", json!(dirac_dim_odd_plain(&m)));
            rep.line(format!("symmetric: {}", m.is_symmetric()));
            rep.line(format!("total dimension: {}", m.total_dimension()));
            let kos = admissible_kos_odd(&m);
            rep.set("admissible_ko", json!(kos));
            rep.line(format!("admissible odd KO-dimensions: {kos:?}"));
            let mut per_ko = Map::new();
            for ko in kos {
                per_ko.insert(
                    ko.to_string(),
                    json!({
                        "dirac_dim": dirac_dim_odd(&m, ko).unwrap(),
                        "ulr_fixed_dim": ulr_fixed_dim_odd(&m, ko).unwrap(),
                    }),
                );
            }
            rep.set("per_ko", Value::Object(per_ko));
        }
        Problem::Graded(pair) => {
            rep.set("kind", json!("pair"));
            check_pair(&mut rep, &pair);
        }
        Problem::Signed(mu) => {
            rep.set("kind", json!("signed"));
            check_pair(&mut rep, &mu.to_pair());
        }
    }
    Ok(rep)
}

fn real_admissible(path: &str) -> Result<Report> {
    let mut rep = Report::new();
    let kos = match load_problem(path)? {
        Problem::Algebra(_) => bail!("{path}: expected multiplicity data, got an algebra file"),
        Problem::Ungraded(m) => admissible_kos_odd(&m),
        Problem::Graded(pair) => admissible_kos_even(&pair),
        Problem::Signed(mu) => admissible_kos_even(&mu.to_pair()),
    };
    rep.set("admissible_ko", json!(kos));
    rep.line(format!("admissible KO-dimensions: {kos:?}"));
    Ok(rep)
}

fn slot_json(s: &Slot, partner: Option<Slot>) -> Value {
    let p = partner.map(|t| {
        json!({
            "parity": format!("{:?}", t.parity),
            "alpha": t.alpha,
            "beta": t.beta,
        })
    });
    json!({
        "parity": format!("{:?}", s.parity),
        "alpha": s.alpha,
        "beta": s.beta,
        "n_alpha": s.n_alpha,
        "mult": s.mult,
        "n_beta": s.n_beta,
        "offset": s.offset,
        "flip_partner": p.unwrap_or(Value::Null),
    })
}

fn real_canonical(path: &str, ko: u8, tol: f64) -> Result<Report> {
    let mut rep = Report::new();
    let (j, slots, defects, dim): (CMat, Vec<Slot>, _, usize);
    match load_problem(path)? {
        Problem::Algebra(_) => bail!("{path}: expected multiplicity data, got an algebra file"),
        Problem::Ungraded(m) => {
            let h = spectre_core::bimodule::Bimodule::build(m);
            let jm = canonical_odd(&h, ko).map_err(|e| anyhow!("{path}: {e}"))?;
            let basis = h.algebra().basis();
            let d = real_structure_defects(
                &jm,
                ko,
                &basis,
                &|x| h.lambda(x),
                &|x| h.rho(x),
                None,
            );
            dim = h.dim;
            slots = slots_of_ungraded(&h);
            j = jm;
            defects = d;
        }
        other => {
            let pair = match other {
                Problem::Graded(pair) => pair,
                Problem::Signed(mu) => mu.to_pair(),
                _ => unreachable!(),
            };
            let g = GradedBimodule::build(&pair);
            let jm = canonical_even(&g, ko).map_err(|e| anyhow!("{path}: {e}"))?;
            let basis = pair.algebra().basis();
            let gamma = g.gamma();
            let d = real_structure_defects(
                &jm,
                ko,
                &basis,
                &|x| g.lambda(x),
                &|x| g.rho(x),
                Some(&gamma),
            );
            dim = g.dim;
            slots = g.slots();
            j = jm;
            defects = d;
        }
    }
    let signs = ko_signs(ko);
    rep.set("ko", json!(ko));
    rep.set(
        "signs",
        json!({
            "epsilon": signs.epsilon,
            "epsilon_prime": signs.epsilon_p,
            "epsilon_double_prime": signs.epsilon_dd,
        }),
    );
    rep.set("dimension", json!(dim));
    let blocks: Vec<Value> =
        slots.iter().map(|s| slot_json(s, flip_partner(&slots, s, ko))).collect();
    rep.set("blocks", Value::Array(blocks));
    rep.set(
        "defects",
        json!({
            "unitarity": defects.unitarity,
            "squared": defects.squared,
            "intertwining": defects.intertwining,
            "grading": defects.grading,
        }),
    );
    rep.set("tolerance", json!(tol));
    rep.set("matrix", cmat_json(&j));
    for s in &slots {
        let p = flip_partner(&slots, s, ko);
        let target = match p {
            Some(t) => format!("({}, {}) [{:?}]", t.alpha, t.beta, t.parity),
            None => "none".into(),
        };
        rep.line(format!(
            "block ({}, {}) [{:?}] dim {} -> {}",
            s.alpha,
            s.beta,
            s.parity,
            s.dim(),
            target
        ));
    }
    rep.line(format!("max defect: {:.3e} (tolerance {:.1e})", defects.max(), tol));
    rep.status = if defects.max() <= tol { "pass" } else { "fail" };
    Ok(rep)
}

fn dirac_dims(path: &str, ko: Option<u8>) -> Result<Report> {
    let mut rep = Report::new();
    match load_problem(path)? {
        Problem::Algebra(_) => bail!("{path}: expected multiplicity data, got an algebra file"),
        Problem::Ungraded(m) => {
            rep.set("dirac_dim_plain", json!(dirac_dim_odd_plain(&m)));
            rep.line(format!("without real structure: {}", dirac_dim_odd_plain(&m)));
            let kos = match ko {
                Some(k) => vec![k],
                None => admissible_kos_odd(&m),
            };
            let mut per_ko = Map::new();
            for k in kos {
                let d = dirac_dim_odd(&m, k).map_err(|e| anyhow!("KO-dimension {k}: {e}"))?;
                let u = ulr_fixed_dim_odd(&m, k).unwrap();
                rep.line(format!("KO {k}: dirac dim {d}, fixed unitary dim {u}"));
                per_ko.insert(k.to_string(), json!({"dirac_dim": d, "ulr_fixed_dim": u}));
            }
            rep.set("per_ko", Value::Object(per_ko));
        }
        other => {
            let pair = match other {
                Problem::Graded(pair) => pair,
                Problem::Signed(mu) => mu.to_pair(),
                _ => unreachable!(),
            };
            rep.set("dirac_dim_plain", json!(dirac_dim_even_plain(&pair)));
            rep.line(format!("without real structure: {}", dirac_dim_even_plain(&pair)));
            let kos = match ko {
                Some(k) => vec![k],
                None => admissible_kos_even(&pair),
            };
            let mut per_ko = Map::new();
            for k in kos {
                let d = dirac_dim_even(&pair, k).map_err(|e| anyhow!("KO-dimension {k}: {e}"))?;
                let u = ulr_fixed_dim_even(&pair, k).unwrap();
                rep.line(format!("KO {k}: dirac dim {d}, fixed unitary dim {u}"));
                per_ko.insert(k.to_string(), json!({"dirac_dim": d, "ulr_fixed_dim": u}));
            }
            rep.set("per_ko", Value::Object(per_ko));
        }
    }
    Ok(rep)
}

fn dirac_random(path: &str, ko: u8, seed: u64, tol: f64) -> Result<Report> {
    let mut rep = Report::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let signs = ko_signs(ko);
    let (d, j, lambda_gens, rho_gens, gamma): (CMat, CMat, Vec<CMat>, Vec<CMat>, Option<CMat>);
    match load_problem(path)? {
        Problem::Algebra(_) => bail!("{path}: expected multiplicity data, got an algebra file"),
        Problem::Ungraded(m) => {
            let h = spectre_core::bimodule::Bimodule::build(m);
            let jm = canonical_odd(&h, ko).map_err(|e| anyhow!("{path}: {e}"))?;
            let slots = slots_of_ungraded(&h);
            d = random_dirac_odd(&slots, h.dim, Some((&jm, signs.epsilon_p)), &mut rng);
            let gens = h.algebra().generators();
            lambda_gens = gens.iter().map(|x| h.lambda(x)).collect();
            rho_gens = gens.iter().map(|x| h.rho(x)).collect();
            gamma = None;
            j = jm;
        }
        other => {
            let pair = match other {
                Problem::Graded(pair) => pair,
                Problem::Signed(mu) => mu.to_pair(),
                _ => unreachable!(),
            };
            let g = GradedBimodule::build(&pair);
            let jm = canonical_even(&g, ko).map_err(|e| anyhow!("{path}: {e}"))?;
            let slots = g.slots();
            d = random_dirac_even(&slots, g.dim, Some((&jm, signs.epsilon_p)), &mut rng);
            let gens = pair.algebra().generators();
            lambda_gens = gens.iter().map(|x| g.lambda(x)).collect();
            rho_gens = gens.iter().map(|x| g.rho(x)).collect();
            gamma = Some(g.gamma());
            j = jm;
        }
    }
    let sa = fro_norm(&(&d - dagger(&d)));
    let oo = order_one_defect(&d, &lambda_gens, &rho_gens);
    let jd = fro_norm(&(&d - conjugate_by_j(&d, &j) * cr(signs.epsilon_p as f64)));
    let gd = gamma.as_ref().map(|g| fro_norm(&(g * &d + &d * g)));
    rep.set("seed", json!(seed));
    rep.set("ko", json!(ko));
    rep.set("tolerance", json!(tol));
    rep.set(
        "defects",
        json!({
            "self_adjoint": sa,
            "order_one": oo,
            "real_structure": jd,
            "grading_odd": gd,
        }),
    );
    rep.line(format!("self-adjointness defect: {sa:.3e}"));
    rep.line(format!("order-one defect: {oo:.3e}"));
    rep.line(format!("real-structure defect: {jd:.3e}"));
    if let Some(g) = gd {
        rep.line(format!("grading anticommutation defect: {g:.3e}"));
    }
    let max = sa.max(oo).max(jd).max(gd.unwrap_or(0.0));
    rep.line(format!("max defect: {max:.3e} (tolerance {tol:.1e})"));
    rep.status = if max <= tol { "pass" } else { "fail" };
    Ok(rep)
}

fn dirac_constrained(path: &str, ko: u8, central: Option<Vec<usize>>) -> Result<Report> {
    let mut rep = Report::new();
    let cap = brute_cap();
    let run = |dim: usize,
               lambda_gens: &[CMat],
               rho_gens: &[CMat],
               gamma: Option<&CMat>,
               j: &CMat,
               commute: &[CMat]|
     -> Result<(usize, usize)> {
        if dim > cap {
            bail!(
                "total dimension {dim} exceeds the brute-force cap {cap} \
                 (set SPECTRE_MAX_BRUTE_DIM to raise it)"
            );
        }
        let epsp = ko_signs(ko).epsilon_p;
        let full =
            brute_force_dirac_basis_commuting(dim, lambda_gens, rho_gens, gamma, Some((j, epsp)), &[]);
        let constrained = brute_force_dirac_basis_commuting(
            dim,
            lambda_gens,
            rho_gens,
            gamma,
            Some((j, epsp)),
            commute,
        );
        Ok((full.len(), constrained.len()))
    };
    let (full, constrained, indices): (usize, usize, Vec<usize>);
    match load_problem(path)? {
        Problem::Algebra(_) => bail!("{path}: expected multiplicity data, got an algebra file"),
        Problem::Ungraded(m) => {
            let alg = m.algebra.clone();
            let idx = central.unwrap_or_else(|| (0..alg.summands.len()).collect());
            let h = spectre_core::bimodule::Bimodule::build(m);
            let jm = canonical_odd(&h, ko).map_err(|e| anyhow!("{path}: {e}"))?;
            let gens = alg.generators();
            let lg: Vec<CMat> = gens.iter().map(|x| h.lambda(x)).collect();
            let rg: Vec<CMat> = gens.iter().map(|x| h.rho(x)).collect();
            let cm: Vec<CMat> = idx
                .iter()
                .map(|&i| {
                    if i >= alg.summands.len() {
                        bail!("central summand index {i} out of range");
                    }
                    Ok(h.lambda(&alg.central_projection(i)))
                })
                .collect::<Result<_>>()?;
            let (f, c) = run(h.dim, &lg, &rg, None, &jm, &cm)?;
            full = f;
            constrained = c;
            indices = idx;
        }
        other => {
            let pair = match other {
                Problem::Graded(pair) => pair,
                Problem::Signed(mu) => mu.to_pair(),
                _ => unreachable!(),
            };
            let alg = pair.algebra().clone();
            let idx = central.unwrap_or_else(|| (0..alg.summands.len()).collect());
            let g = GradedBimodule::build(&pair);
            let jm = canonical_even(&g, ko).map_err(|e| anyhow!("{path}: {e}"))?;
            let gens = alg.generators();
            let lg: Vec<CMat> = gens.iter().map(|x| g.lambda(x)).collect();
            let rg: Vec<CMat> = gens.iter().map(|x| g.rho(x)).collect();
            let gamma = g.gamma();
            let cm: Vec<CMat> = idx
                .iter()
                .map(|&i| {
                    if i >= alg.summands.len() {
                        bail!("central summand index {i} out of range");
                    }
                    Ok(g.lambda(&alg.central_projection(i)))
                })
                .collect::<Result<_>>()?;
            let (f, c) = run(g.dim, &lg, &rg, Some(&gamma), &jm, &cm)?;
            full = f;
            constrained = c;
            indices = idx;
        }
    }
    rep.set("ko", json!(ko));
    rep.set("central_summands", json!(indices));
    rep.set("dirac_dim", json!(full));
    rep.set("constrained_dirac_dim", json!(constrained));
    rep.line(format!("admissible Dirac dimension: {full}"));
    rep.line(format!("constrained to commute with central projections: {constrained}"));
    Ok(rep)
}

fn cc_classify(path: &str, ko: u8) -> Result<Report> {
    let a = load_algebra(path)?;
    let triplets = classify_irreducible(&a, ko).map_err(|e| anyhow!("{e}"))?;
    let mut rep = Report::new();
    let list: Vec<Value> = triplets
        .iter()
        .map(|t| {
            json!({
                "kind": format!("{:?}", t.kind),
                "skeleton": t.skeleton,
                "multiplicity": imat_json(&t.mult.m),
                "separating": is_separating(t),
            })
        })
        .collect();
    rep.line(format!("irreducible triplets at KO {ko}: {}", triplets.len()));
    for t in &triplets {
        rep.line(format!(
            "  type {:?}, multiplicity {}, separating {}",
            t.kind,
            imat_text(&t.mult.m),
            is_separating(t)
        ));
    }
    rep.set("ko", json!(ko));
    rep.set("triplets", Value::Array(list));
    Ok(rep)
}

/// A representative grading per family, verified by construction.
fn sample_grading(
    t: &spectre_core::classify::IrreducibleTriplet,
    fam: GradingFamily,
) -> Result<CMat> {
    match fam {
        GradingFamily::TypeA => {
            let s = t.algebra.summands[0];
            // Prefer a balanced diagonal grading when the size allows one.
            let g = match s.ring {
                Ring::H if s.k % 2 == 0 => diag_grading(s, s.n() / 2)?,
                Ring::R | Ring::C if s.n() >= 2 => diag_grading(s, s.n() / 2)?,
                _ => identity_grading(s),
            };
            Ok(grading_type_a(t, &g, 1.0)?)
        }
        GradingFamily::TypeBDiagonal { eps2 } => {
            let g1 = identity_grading(t.algebra.summands[0]);
            let g2 = identity_grading(t.algebra.summands[1]);
            Ok(grading_type_b_diagonal(t, &g1, &g2, eps2)?)
        }
        GradingFamily::TypeBOffDiagonal => {
            let n = t.algebra.summands[0].n();
            Ok(grading_type_b_offdiagonal(t, &spectre_core::linalg::eye(n), cr(1.0))?)
        }
    }
}

fn cc_gradings(path: &str, ko: u8) -> Result<Report> {
    let a = load_algebra(path)?;
    let triplets = classify_irreducible(&a, ko).map_err(|e| anyhow!("{e}"))?;
    let mut rep = Report::new();
    let mut all_ok = true;
    let mut out = vec![];
    for t in &triplets {
        let fams = compatible_grading_families(t);
        let mut fam_list = vec![];
        for fam in fams {
            let name = match fam {
                GradingFamily::TypeA => "type_a".to_string(),
                GradingFamily::TypeBDiagonal { eps2 } => format!("type_b_diagonal_eps2_{eps2}"),
                GradingFamily::TypeBOffDiagonal => "type_b_off_diagonal".to_string(),
            };
            let verified = match sample_grading(t, fam) {
                Ok(_) => true,
                Err(_) => false,
            };
            all_ok &= verified;
            rep.line(format!(
                "type {:?}: family {name}, sample grading verified: {verified}",
                t.kind
            ));
            fam_list.push(json!({"family": name, "sample_verified": verified}));
        }
        out.push(json!({
            "kind": format!("{:?}", t.kind),
            "families": fam_list,
        }));
    }
    if triplets.is_empty() {
        rep.line("no irreducible triplets, no gradings".into());
    }
    rep.set("ko", json!(ko));
    rep.set("triplets", Value::Array(out));
    rep.status = if all_ok { "pass" } else { "fail" };
    Ok(rep)
}

fn rmax_json(p: &OffDiagonalProblem) -> (Value, String) {
    let rr = r_max(p);
    let line = format!(
        "({}, {}) ranks ({}, {}): argmax {:?}, table {:?}, agree {}",
        ring_name(p.k1),
        ring_name(p.k2),
        p.r1,
        p.r2,
        rr.r_max,
        rr.table,
        rr.agrees_with_table
    );
    let values: Vec<Value> = rr
        .values
        .iter()
        .map(|&(r, (num, den))| json!({"r": r, "numerator": num, "denominator": den}))
        .collect();
    (
        json!({
            "k1": ring_name(p.k1),
            "k2": ring_name(p.k2),
            "r1": p.r1,
            "r2": p.r2,
            "values": values,
            "uncovered": rr.uncovered,
            "r_max": rr.r_max,
            "table": rr.table,
            "agrees_with_table": rr.agrees_with_table,
        }),
        line,
    )
}

#[allow(clippy::too_many_arguments)]
fn cc_maximize(
    k1: Ring,
    k2: Ring,
    r1: i64,
    r2: i64,
    r1p: Option<i64>,
    r2p: Option<i64>,
    all_domains: bool,
) -> Result<Report> {
    if r1 < 1 || r2 < 1 {
        bail!("ranks r1, r2 must be positive");
    }
    let mut rep = Report::new();
    let mut problems = vec![OffDiagonalProblem { k1, k2, r1, r2 }];
    if all_domains {
        let (Some(r1p), Some(r2p)) = (r1p, r2p) else {
            bail!("--all-domains needs the complementary dimensions --r1p and --r2p");
        };
        if r1p < 1 || r2p < 1 {
            bail!("complementary dimensions must be positive");
        }
        problems.push(OffDiagonalProblem { k1, k2, r1, r2: r2p });
        problems.push(OffDiagonalProblem { k1, k2, r1: r1p, r2 });
        problems.push(OffDiagonalProblem { k1, k2, r1: r1p, r2: r2p });
    }
    let mut out = vec![];
    for p in &problems {
        let (v, line) = rmax_json(p);
        rep.line(line);
        out.push(v);
    }
    rep.set("reports", Value::Array(out));
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Standard-model reproduction.
// ---------------------------------------------------------------------------

struct SmChecks {
    rep: Report,
    ok: bool,
}

impl SmChecks {
    fn new() -> Self {
        SmChecks { rep: Report::new(), ok: true }
    }

    fn imat(&mut self, name: &str, computed: &IMat, expected: &IMat) {
        let pass = computed == expected;
        self.ok &= pass;
        self.rep.line(format!("{name}: {}", if pass { "PASS" } else { "FAIL" }));
        if !pass {
            self.rep.line(format!("  expected: {}", imat_text(expected)));
            self.rep.line(format!("  computed: {}", imat_text(computed)));
        }
        self.rep.set(
            name,
            json!({"pass": pass, "computed": imat_json(computed), "expected": imat_json(expected)}),
        );
    }

    fn flag(&mut self, name: &str, computed: Value, expected: Value) {
        let pass = computed == expected;
        self.ok &= pass;
        self.rep.line(format!(
            "{name}: {} (computed {computed}, expected {expected})",
            if pass { "PASS" } else { "FAIL" }
        ));
        self.rep.set(name, json!({"pass": pass, "computed": computed, "expected": expected}));
    }

    fn float(&mut self, name: &str, value: f64, tol: f64) {
        let pass = value <= tol;
        self.ok &= pass;
        self.rep.line(format!(
            "{name}: {} (defect {value:.3e}, tolerance {tol:.1e})",
            if pass { "PASS" } else { "FAIL" }
        ));
        self.rep.set(name, json!({"pass": pass, "defect": value, "tolerance": tol}));
    }
}

fn sm_reproduce(n: i64, seed: u64, tol: f64) -> Result<Report> {
    if n < 1 {
        bail!("--generations must be at least 1");
    }
    let mut c = SmChecks::new();
    let a_lr = ccm::algebra_lr();
    let a_f = ccm::algebra_f();

    // Frozen integer data, scaled by the generation count.
    let mu_pattern: IMat = vec![
        vec![0, 0, -1, 1, 0, 0],
        vec![0, 0, 0, 0, 0, 0],
        vec![1, 0, 0, 0, 1, 0],
        vec![-1, 0, 0, 0, -1, 0],
        vec![0, 0, -1, 1, 0, 0],
        vec![0, 0, 0, 0, 0, 0],
    ];
    let mu_seed_pattern: IMat = vec![
        vec![0, 0, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 0],
        vec![1, 0, 0, 0, 1, 0],
        vec![-1, 0, 0, 0, -1, 0],
        vec![0, 0, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 0],
    ];
    let mu_hat_pattern: IMat = vec![
        vec![0, -1, 1, 0],
        vec![1, 0, 0, 1],
        vec![-1, 0, 0, -1],
        vec![0, -1, 1, 0],
    ];
    let mu_seed_hat_pattern: IMat = vec![
        vec![0, 0, 0, 0],
        vec![1, 0, 0, 1],
        vec![-1, 0, 0, -1],
        vec![0, 0, 0, 0],
    ];
    let m_even_f_pattern: IMat = vec![
        vec![1, 1, 0, 0, 0],
        vec![0, 0, 0, 0, 0],
        vec![1, 0, 0, 1, 0],
        vec![1, 1, 0, 0, 0],
        vec![0, 0, 0, 0, 0],
    ];
    let form_f_pattern: IMat = vec![vec![0, -1, -1], vec![1, 0, 1], vec![1, -1, 0]];
    let form_f_seed_pattern: IMat = vec![vec![-1, 0, -1], vec![1, 0, 1], vec![0, 0, 0]];

    let mu = ccm::mu_lr(n);
    c.imat("mu", &mu.mu, &imat_scale(&mu_pattern, n));
    let mu_seed = ccm::mu_seed_lr(n);
    c.imat("mu_seed", &mu_seed.mu, &imat_scale(&mu_seed_pattern, n));
    let mu_hat = hat(&a_lr, &mu.mu);
    c.imat("mu_hat", &mu_hat, &imat_scale(&mu_hat_pattern, n));
    let mu_seed_hat = hat(&a_lr, &mu_seed.mu);
    c.imat("mu_seed_hat", &mu_seed_hat, &imat_scale(&mu_seed_hat_pattern, n));

    // Restriction to the even subalgebra reproduces the frozen pair.
    let pair_f = ccm::restricted_fermion_pair_f(n);
    c.imat("m_even_f", &pair_f.even.m, &imat_scale(&m_even_f_pattern, n));
    c.imat("m_odd_f", &pair_f.odd.m, &imat_transpose(&imat_scale(&m_even_f_pattern, n)));
    let mu_f = imat_sub(&pair_f.even.m, &pair_f.odd.m);
    c.imat(
        "mu_f",
        &mu_f,
        &imat_sub(
            &imat_scale(&m_even_f_pattern, n),
            &imat_transpose(&imat_scale(&m_even_f_pattern, n)),
        ),
    );

    // Intersection forms.
    let pair_lr = ccm::fermion_pair_lr(n);
    let form_lr = intersection_form(&pair_lr);
    c.imat("intersection_form", &form_lr.form, &imat_scale(&mu_hat_pattern, 2 * n));
    let form_seed = intersection_form(&mu_seed.to_pair());
    c.imat("intersection_form_seed", &form_seed.form, &imat_scale(&mu_seed_hat_pattern, 2 * n));
    let form_f = intersection_form(&pair_f);
    c.imat("intersection_form_f", &form_f.form, &imat_scale(&form_f_pattern, 2 * n));
    let seed_pair_f = restrict_pair(&a_f, &ccm::branching_lr_to_f(), &mu_seed.to_pair())
        .map_err(|e| anyhow!("{e}"))?;
    let form_f_seed = intersection_form(&seed_pair_f);
    c.imat(
        "intersection_form_f_seed",
        &form_f_seed.form,
        &imat_scale(&form_f_seed_pattern, 2 * n),
    );

    // Degeneracy flags: every one of these pairings is degenerate.
    c.flag("mu_hat_degenerate", json!(int_det(&mu_hat) == 0), json!(true));
    c.flag("mu_seed_hat_degenerate", json!(int_det(&mu_seed_hat) == 0), json!(true));
    c.flag("poincare_f", json!(form_f.poincare), json!(false));
    c.flag("poincare_f_seed", json!(form_f_seed.poincare), json!(false));
    c.flag("quasi_orientable_lr", json!(is_quasi_orientable(&pair_lr)), json!(true));
    c.flag("quasi_orientable_f", json!(is_quasi_orientable(&pair_f)), json!(false));
    c.flag(
        "quasi_orientability_witness_f",
        witness_1based(quasi_orientability_witness(&pair_f)),
        json!([1, 1]),
    );

    // Moduli dimensions.
    c.flag(
        "dirac_dim_f",
        json!(dirac_dim_even(&pair_f, ccm::SM_KO).map_err(|e| anyhow!("{e}"))?),
        json!(ccm::dirac_dim_f(n)),
    );
    c.flag(
        "dirac_dim_lr",
        json!(dirac_dim_even(&pair_lr, ccm::SM_KO).map_err(|e| anyhow!("{e}"))?),
        json!(ccm::dirac_dim_lr(n)),
    );
    c.flag(
        "constrained_dirac_dim_f",
        json!(ccm::constrained_dirac_dim_f(n)),
        json!(8 * n * n + n * (n + 1)),
    );

    // A concrete Yukawa-built Dirac operator passes all operator laws and
    // commutes with the distinguished subalgebra.
    let g = GradedBimodule::build(&pair_f);
    let yuk = ccm::YukawaData::random(n as usize, seed);
    let d = ccm::sm_dirac(&g, &yuk);
    let gens = a_f.generators();
    let lg: Vec<CMat> = gens.iter().map(|x| g.lambda(x)).collect();
    let rg: Vec<CMat> = gens.iter().map(|x| g.rho(x)).collect();
    c.float("dirac_self_adjoint", fro_norm(&(&d - dagger(&d))), tol);
    c.float("dirac_order_one", order_one_defect(&d, &lg, &rg), tol);
    let gamma = g.gamma();
    c.float("dirac_grading_odd", fro_norm(&(&gamma * &d + &d * &gamma)), tol);
    let j = canonical_even(&g, ccm::SM_KO).map_err(|e| anyhow!("{e}"))?;
    let epsp = ko_signs(ccm::SM_KO).epsilon_p;
    c.float(
        "dirac_real_structure",
        fro_norm(&(&d - conjugate_by_j(&d, &j) * cr(epsp as f64))),
        tol,
    );
    let mut cf_defect: f64 = 0.0;
    for x in ccm::cf_generators_f() {
        let lx = g.lambda(&x);
        cf_defect = cf_defect.max(fro_norm(&(&d * &lx - &lx * &d)));
    }
    c.float("dirac_commutes_with_distinguished_subalgebra", cf_defect, tol);

    let mut rep = c.rep;
    rep.set("generations", json!(n));
    rep.set("seed", json!(seed));
    rep.status = if c.ok { "pass" } else { "fail" };
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Dispatch.
// ---------------------------------------------------------------------------

fn dispatch(cli: &Cli) -> Result<Report> {
    match &cli.cmd {
        Cmd::Algebra { cmd: AlgebraCmd::Info { file } } => algebra_info(file),
        Cmd::Bimodule { cmd: BimoduleCmd::Check { file } } => bimodule_check(file),
        Cmd::Real { cmd } => match cmd {
            RealCmd::Admissible { file } => real_admissible(file),
            RealCmd::Canonical { file, ko, tolerance } => real_canonical(file, *ko, *tolerance),
        },
        Cmd::Dirac { cmd } => match cmd {
            DiracCmd::Dims { file, ko } => dirac_dims(file, *ko),
            DiracCmd::Random { file, ko, seed, tolerance } => {
                dirac_random(file, *ko, *seed, *tolerance)
            }
            DiracCmd::Constrained { file, ko, central } => {
                dirac_constrained(file, *ko, central.clone())
            }
        },
        Cmd::Cc { cmd } => match cmd {
            CcCmd::Classify { algebra, ko } => cc_classify(algebra, *ko),
            CcCmd::Gradings { algebra, ko } => cc_gradings(algebra, *ko),
            CcCmd::Maximize { k1, k2, r1, r2, r1p, r2p, all_domains } => cc_maximize(
                (*k1).into(),
                (*k2).into(),
                *r1,
                *r2,
                *r1p,
                *r2p,
                *all_domains,
            ),
        },
        Cmd::Sm { cmd: SmCmd::Reproduce { generations, seed, tolerance } } => {
            sm_reproduce(*generations, *seed, *tolerance)
        }
    }
}

fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(report) => {
            let code = if report.status == "fail" { 1 } else { 0 };
            emit(&cli, &report);
            code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn main() {
    std::process::exit(run());
}
