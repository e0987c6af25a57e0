use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use jacobi_core::cache::{Cache, DimensionRecord, CACHE_VERSION};
use jacobi_core::closed::{
    c2_analysis, closed_dimension, omega_smallest_samples, verify_hopf_ideal, verify_omega_lemmas,
};
use jacobi_core::element::Element;
use jacobi_core::hopf::{bracket, chi, chi_inv, star, tree_reduce, Tensor};
use jacobi_core::linalg::SparseVec;
use jacobi_core::parse::{parse_element, parse_value, print_diagram, print_element, print_tensor, Value};
use jacobi_core::quotient::{normal_form, quotient_basis, weight_and_hwv_check, OrderedQuotient};
use jacobi_core::rep::{littlewood_restriction, sp_dim, verify_l2l3, IrrepLabel, Partition};
use jacobi_core::symplectic::{basis, BasisVector};
use jacobi_core::torelli::{
    b2, b2_columns, bracket_closed_form, generated_subalgebra_dims, hwv_table, image_identities, r3_preimage,
    t1_t2, verify_im_b2, verify_ker_b2, Pair,
};
use jacobi_core::weight::{weight_element, MetrizedLie, PolyTensor};
use jacobi_core::{fmt_q, qi, Caps, Diagram, Error, Q};

#[derive(Parser, Debug)]
#[command(name = "jacobi", version, about = "Exact computations with symplectic Jacobi diagrams")]
struct Cli {
    /// Genus g of the surface; labels are a1..ag, b1..bg
    #[arg(long, short, global = true, default_value_t = 3)]
    genus: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Ignore and do not write the dimension cache
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(long, global = true, env = "JACOBI_CACHE_DIR", default_value = ".jacobi-cache")]
    cache_dir: PathBuf,
    /// Worker threads for parallel stages (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Allow the long genus-4 kernel computation
    #[arg(long, global = true)]
    deep: bool,
    /// Degree cap [env: JACOBI_MAX_DEGREE, default 3]
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Genus cap for diagram computations [env: JACOBI_MAX_GENUS, default 4]
    #[arg(long, global = true)]
    max_genus: Option<usize>,
    /// Elimination row cap [env: JACOBI_MAX_ROWS, default 200000]
    #[arg(long, global = true)]
    max_rows: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Space {
    /// Strut-free part of A, all components
    #[value(name = "A", alias = "a")]
    A,
    /// Connected part of A
    #[value(name = "Ac", alias = "ac")]
    Ac,
    /// Ordered diagrams
    #[value(name = "Alt", alias = "alt")]
    Alt,
    /// Connected closed-surface quotient
    #[value(name = "I", alias = "i")]
    I,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression and print its normal form
    Normalize { expr: String },
    /// x ⋆ y
    Star { x: String, y: String },
    /// [x, y]_⋆
    Bracket { x: String, y: String },
    /// Symmetrization into ordered diagrams
    Chi { expr: String },
    /// Inverse of the symmetrization
    Chiinv { expr: String },
    /// Dimension of a graded piece
    Dim {
        #[arg(long, value_enum, default_value_t = Space::Ac)]
        space: Space,
        #[arg(long, short, default_value_t = 1)]
        degree: usize,
    },
    /// Run a named verification check
    Verify {
        #[arg(value_enum)]
        check: Check,
        /// Top degree for subalgebra-dims
        #[arg(long, short, default_value_t = 2)]
        degree: usize,
    },
    /// Restrict a GL_2g module to Sp_2g
    Decompose {
        /// `l2l3` or `lambda=<parts>`, e.g. `lambda=2,1,1`
        #[arg(long)]
        target: String,
    },
    /// Evaluate a weight system on an expression
    Weight {
        /// `sl2`, `abelian`, `abelian:N` or a JSON file
        #[arg(long, default_value = "sl2")]
        lie: String,
        expr: String,
    },
    /// Export a sparse matrix as JSON {rows, cols, entries}
    Export {
        #[arg(value_enum)]
        matrix: Matrix,
        #[arg(long, short, default_value_t = 2)]
        degree: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Check {
    LemBracket,
    T1,
    T2,
    KerB2,
    ImB2,
    Hwv,
    R3,
    SubalgebraDims,
    L2l3,
    C2,
    OmegaLemmas,
    HopfIdeal,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Matrix {
    /// b2 from the wedge basis to connected degree-2 diagrams
    B2,
    /// Normal form of every enumerated connected diagram of the given degree
    Nf,
}

/// Outcome of one check; `values` keeps insertion order for text output.
struct Report {
    check: String,
    passed: bool,
    values: Vec<(&'static str, Json)>,
}

impl Report {
    fn new(check: &str) -> Self {
        Report { check: check.into(), passed: true, values: Vec::new() }
    }

    fn put(&mut self, key: &'static str, value: impl Into<Json>) {
        self.values.push((key, value.into()));
    }

    fn expect(&mut self, key: &'static str, got: impl Into<Json>, want: impl Into<Json>) {
        let (got, want) = (got.into(), want.into());
        self.passed &= got == want;
        self.values.push((key, json!({ "got": got, "expected": want })));
    }

    fn require(&mut self, key: &'static str, ok: bool) {
        self.passed &= ok;
        self.values.push((key, Json::Bool(ok)));
    }

    fn to_json(&self, genus: usize) -> Json {
        let values: serde_json::Map<String, Json> = self.values.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        json!({ "check": self.check, "genus": genus, "passed": self.passed, "values": values })
    }

    fn to_text(&self, genus: usize) -> String {
        let mut s = format!("{} {} (genus {genus})", if self.passed { "PASS" } else { "FAIL" }, self.check);
        for (k, v) in &self.values {
            let shown = match v {
                Json::String(t) => t.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("\n  {k} = {shown}"));
        }
        s
    }
}

fn qs(x: &Q) -> Json {
    Json::String(fmt_q(x))
}

fn element_json(x: &Element) -> Json {
    let terms: Vec<Json> =
        x.iter().map(|(d, c)| json!({ "coeff": fmt_q(c), "diagram": print_diagram(d) })).collect();
    json!({ "text": print_element(x), "terms": terms })
}

fn tensor_json(t: &Tensor) -> Json {
    let terms: Vec<Json> = t
        .iter()
        .map(|((a, b), c)| json!({ "coeff": fmt_q(c), "left": print_diagram(a), "right": print_diagram(b) }))
        .collect();
    json!({ "text": print_tensor(t), "terms": terms })
}

fn irrep_json(m: &BTreeMap<IrrepLabel, i64>) -> Json {
    let rows: Vec<Json> = m
        .iter()
        .map(|(l, k)| json!({ "irrep": l.to_string(), "fundamentals": l.0, "multiplicity": k, "dim": sp_dim(l).to_string() }))
        .collect();
    Json::Array(rows)
}

struct Ctx {
    genus: usize,
    caps: Caps,
    deep: bool,
    cache: Option<Cache>,
}

impl Ctx {
    fn parse(&self, text: &str) -> Result<Element> {
        Ok(parse_element(text, Some(self.genus))?)
    }
}

/// Normal form; ordered elements are normalized through `χ ∘ nf ∘ χ⁻¹`.
fn normalize(x: &Element) -> Element {
    if x.is_ordered() {
        chi(&normal_form(&chi_inv(x)))
    } else {
        normal_form(x)
    }
}

fn emit_element(format: Format, x: &Element) {
    match format {
        Format::Text => println!("{}", print_element(x)),
        Format::Json => println!("{}", element_json(x)),
    }
}

fn run_value(ctx: &Ctx, format: Format, text: &str) -> Result<()> {
    match parse_value(text, Some(ctx.genus))? {
        Value::Element(x) => emit_element(format, &normalize(&x)),
        Value::Tensor(t) => match format {
            Format::Text => println!("{}", print_tensor(&t)),
            Format::Json => println!("{}", tensor_json(&t)),
        },
    }
    Ok(())
}

// ---------------------------------------------------------------- dimensions

fn connected_record(ctx: &Ctx, degree: usize) -> Result<DimensionRecord> {
    cached(ctx, "Ac", degree, || {
        let qb = quotient_basis(ctx.genus, degree, &ctx.caps)?;
        Ok(DimensionRecord {
            version: CACHE_VERSION,
            space: "Ac".into(),
            genus: ctx.genus,
            degree,
            dimension: qb.dimension(),
            loop_dimensions: qb.loop_dimensions().into_iter().collect(),
            basis: qb.standard.iter().map(print_diagram).collect(),
        })
    })
}

fn cached(ctx: &Ctx, space: &str, degree: usize, build: impl FnOnce() -> Result<DimensionRecord>) -> Result<DimensionRecord> {
    if let Some(rec) = ctx.cache.as_ref().and_then(|c| c.load(space, ctx.genus, degree)) {
        return Ok(rec);
    }
    let rec = build()?;
    if let Some(c) = &ctx.cache {
        c.store(&rec).with_context(|| format!("writing cache in {}", c.dir().display()))?;
    }
    Ok(rec)
}

/// Coefficient of `t^degree` in `Π_k (1 − t^k)^{−dim A^c_k}`.
fn full_dimension(connected: &[usize], degree: usize) -> u128 {
    let mut series = vec![0u128; degree + 1];
    series[0] = 1;
    for (k, &n) in connected.iter().enumerate().skip(1) {
        for _ in 0..n {
            for i in k..=degree {
                series[i] += series[i - k];
            }
        }
    }
    series[degree]
}

fn run_dim(ctx: &Ctx, format: Format, space: Space, degree: usize) -> Result<()> {
    ctx.caps.check_degree(degree)?;
    let rec = match space {
        Space::Ac => connected_record(ctx, degree)?,
        Space::A => {
            let mut dims = vec![0];
            for k in 1..=degree {
                dims.push(connected_record(ctx, k)?.dimension);
            }
            let dimension = usize::try_from(full_dimension(&dims, degree))?;
            DimensionRecord {
                version: CACHE_VERSION,
                space: "A".into(),
                genus: ctx.genus,
                degree,
                dimension,
                loop_dimensions: Vec::new(),
                basis: Vec::new(),
            }
        }
        Space::Alt => cached(ctx, "Alt", degree, || {
            let oq = OrderedQuotient::build(ctx.genus, degree, &ctx.caps)?;
            Ok(DimensionRecord {
                version: CACHE_VERSION,
                space: "Alt".into(),
                genus: ctx.genus,
                degree,
                dimension: oq.dimension(),
                loop_dimensions: Vec::new(),
                basis: Vec::new(),
            })
        })?,
        Space::I => cached(ctx, "I", degree, || {
            Ok(DimensionRecord {
                version: CACHE_VERSION,
                space: "I".into(),
                genus: ctx.genus,
                degree,
                dimension: closed_dimension(ctx.genus, degree, &ctx.caps)?,
                loop_dimensions: Vec::new(),
                basis: Vec::new(),
            })
        })?,
    };
    match format {
        Format::Text => {
            println!("{}", rec.dimension);
            if !rec.loop_dimensions.is_empty() {
                let parts: Vec<String> = rec.loop_dimensions.iter().map(|(l, n)| format!("loop {l}: {n}")).collect();
                println!("{}", parts.join(", "));
            }
        }
        Format::Json => println!("{}", serde_json::to_string(&rec)?),
    }
    Ok(())
}

// ---------------------------------------------------------------- checks

/// Deterministic spread of label sextuples: half uniform, half with `x` among
/// the `α`'s and `y` among the `β`'s so that the determinant is often nonzero.
fn sextuples(genus: usize, count: usize) -> Vec<([BasisVector; 3], [BasisVector; 3])> {
    let b = basis(genus);
    let (alphas, betas) = b.split_at(genus);
    let pick = |pool: &[BasisVector], mut k: u64| -> [BasisVector; 3] {
        let n = pool.len() as u64;
        let mut out = [pool[0]; 3];
        for slot in &mut out {
            *slot = pool[(k % n) as usize];
            k /= n;
        }
        out
    };
    (0..count as u64)
        .map(|i| {
            let k = i.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 16;
            if i % 2 == 0 {
                (pick(&b, k), pick(&b, k >> 24))
            } else {
                (pick(alphas, k), pick(betas, k >> 24))
            }
        })
        .collect()
}

fn check_lem_bracket(ctx: &Ctx) -> Result<Report> {
    let mut r = Report::new("lem-bracket");
    let y = |t: [BasisVector; 3]| {
        let l = t.map(jacobi_core::Label::Basis);
        Element::from_diagram(&Diagram::y(l[0], l[1], l[2]))
    };
    let samples = sextuples(ctx.genus, 200);
    let mut failures = 0usize;
    let mut with_theta = 0usize;
    for (x, z) in &samples {
        let closed = bracket_closed_form(*x, *z);
        if closed.coefficient(&Diagram::theta()) != qi(0) {
            with_theta += 1;
        }
        if !normal_form(&bracket(&y(*x), &y(*z)).sub(&closed)).is_zero() {
            failures += 1;
        }
    }
    r.put("samples", samples.len());
    r.put("samples_with_theta", with_theta);
    r.expect("failures", failures, 0);
    Ok(r)
}

fn check_t(ctx: &Ctx, second: bool) -> Result<Report> {
    let rep = t1_t2(ctx.genus)?;
    let (name, split, theta, s) = if second {
        ("t2", &rep.t2, &rep.expected_theta.1, &rep.expected_s.1)
    } else {
        ("t1", &rep.t1, &rep.expected_theta.0, &rep.expected_s.0)
    };
    let mut r = Report::new(name);
    r.expect("theta_coefficient", qs(&split.theta), qs(theta));
    r.expect("s_omega_omega_coefficient", split.s_omega.as_ref().map_or(Json::Null, qs), qs(s));
    if second {
        r.expect("determinant", qs(&rep.determinant), qs(&rep.expected_determinant));
        r.require("determinant_nonzero", rep.det_ok());
    }
    Ok(r)
}

fn check_ker_b2(ctx: &Ctx) -> Result<Report> {
    if ctx.genus >= 4 && !ctx.deep {
        return Err(Error::CapExceeded { what: "genus (pass --deep)", value: ctx.genus, cap: 3 }.into());
    }
    let rep = verify_ker_b2(ctx.genus, &ctx.caps)?;
    let mut r = Report::new("ker-b2");
    r.put("domain_dim", rep.domain_dim);
    r.put("rank", rep.rank);
    r.expect("kernel_dim", rep.kernel_dim, rep.span_dim);
    r.put("r1_zero", rep.r1_zero);
    r.require("b2_r1_zero", rep.b2_r1_zero);
    r.require("b2_r2_zero", rep.b2_r2_zero);
    r.require("span_in_kernel", rep.span_in_kernel);
    r.require("kernel_equals_span", rep.equal);
    Ok(r)
}

fn check_im_b2(ctx: &Ctx) -> Result<Report> {
    let rep = verify_im_b2(ctx.genus, &ctx.caps)?;
    let mut r = Report::new("im-b2");
    r.expect("rank", rep.rank, rep.even_dim);
    let loops: serde_json::Map<String, Json> = rep.loop_dims.iter().map(|(l, n)| (l.to_string(), json!(n))).collect();
    r.put("loop_dimensions", Json::Object(loops));
    r.require("image_in_even_part", rep.image_in_even);
    r.require("image_equals_even_part", rep.equal);
    Ok(r)
}

fn check_hwv(ctx: &Ctx) -> Result<Report> {
    let mut r = Report::new("hwv");
    let mut rows = Vec::new();
    for (name, x, weight) in hwv_table(ctx.genus) {
        let rep = weight_and_hwv_check(&x, ctx.genus)?;
        let ok = rep.weight.as_ref() == Some(&weight) && rep.highest && !normal_form(&x).is_zero();
        r.passed &= ok;
        rows.push(json!({ "vector": name, "weight": rep.weight, "expected_weight": weight, "highest": rep.highest, "passed": ok }));
    }
    r.put("vectors", Json::Array(rows));
    let (first, second) = image_identities(ctx.genus);
    r.require("bracket_identities_hold", first.is_zero() && second.is_zero());
    Ok(r)
}

fn check_r3(ctx: &Ctx) -> Result<Report> {
    let (r3, a, b) = r3_preimage(ctx.genus)?;
    let image = b2(&r3);
    let mut r = Report::new("r3");
    r.put("t1_coefficient", qs(&a));
    r.put("t2_coefficient", qs(&b));
    r.expect("b2_r3", print_element(&image), print_element(&Element::from_diagram(&Diagram::theta())));
    r.require("tree_part_zero", normal_form(&tree_reduce(&image)).is_zero());
    Ok(r)
}

fn check_subalgebra(ctx: &Ctx, degree: usize) -> Result<Report> {
    let mut r = Report::new("subalgebra-dims");
    let dims = generated_subalgebra_dims(ctx.genus, degree, &ctx.caps)?;
    let rows: Vec<Json> = dims.iter().map(|(d, n, even)| json!({ "degree": d, "dim": n, "even_loop": even })).collect();
    r.passed = dims.iter().all(|x| x.2);
    r.put("degrees", Json::Array(rows));
    Ok(r)
}

fn check_l2l3(ctx: &Ctx) -> Result<Report> {
    let rep = verify_l2l3(ctx.genus)?;
    let mut r = Report::new("l2l3");
    let gl: Vec<Json> = rep.gl_parts.iter().map(|(p, m)| json!({ "partition": p.to_string(), "multiplicity": m })).collect();
    r.put("gl_parts", Json::Array(gl));
    r.expect("restriction", irrep_json(&rep.computed), irrep_json(&rep.expected));
    r.expect("total_dim", rep.total_dim.to_string(), rep.expected_dim.to_string());
    Ok(r)
}

fn check_c2(ctx: &Ctx) -> Result<Report> {
    let rep = c2_analysis(ctx.genus, &ctx.caps)?;
    let mut r = Report::new("c2");
    r.put("ic2_dim", rep.ic2_dim);
    r.require("ic2_spans_agree", rep.spans_agree);
    r.require("ic2_in_even_part", rep.ic2_in_even);
    r.put("even_dim", rep.even_dim);
    r.put("domain_dim", rep.quotient_domain_dim);
    r.require("well_defined", rep.well_defined);
    r.expect("rank", rep.rank, rep.even_dim - rep.ic2_dim);
    r.expect("kernel_dim", rep.kernel_dim, rep.r1_class_dim);
    r.require("s_omega_omega_congruent", rep.s_omega_omega_ok);
    r.require("y_omega_preimage", rep.y_omega_preimage_ok);
    Ok(r)
}

fn check_omega_lemmas(ctx: &Ctx) -> Result<Report> {
    let rep = verify_omega_lemmas(ctx.genus)?;
    let mut r = Report::new("omega-lemmas");
    r.put("swap_checks", rep.swap_checks);
    r.expect("swap_failures", rep.swap_failures, 0);
    r.put("commutation_checks", rep.commutation_checks);
    r.expect("commutation_failures", rep.commutation_failures, 0);
    Ok(r)
}

fn check_hopf_ideal(ctx: &Ctx) -> Result<Report> {
    use jacobi_core::Label;
    if ctx.genus < 2 {
        bail!("hopf-ideal needs genus ≥ 2");
    }
    let others = [
        Diagram::y(Label::alpha(1), Label::alpha(2), Label::beta(1)),
        Diagram::strut(Label::Omega, Label::beta(2)),
    ];
    let rep = verify_hopf_ideal(ctx.genus, &omega_smallest_samples(ctx.genus), &others, &ctx.caps)?;
    let mut r = Report::new("hopf-ideal");
    r.put("samples", rep.samples);
    r.expect("membership_failures", rep.membership_failures, 0);
    r.expect("left_failures", rep.left_failures, 0);
    r.expect("right_failures", rep.right_failures, 0);
    r.expect("coproduct_failures", rep.coproduct_failures, 0);
    r.expect("antipode_failures", rep.antipode_failures, 0);
    r.require("sp_closed", rep.sp_closed);
    r.expect("lie_ideal_failures", rep.lie_ideal_failures, 0);
    Ok(r)
}

fn run_check(ctx: &Ctx, check: Check, degree: usize) -> Result<Report> {
    match check {
        Check::LemBracket => check_lem_bracket(ctx),
        Check::T1 => check_t(ctx, false),
        Check::T2 => check_t(ctx, true),
        Check::KerB2 => check_ker_b2(ctx),
        Check::ImB2 => check_im_b2(ctx),
        Check::Hwv => check_hwv(ctx),
        Check::R3 => check_r3(ctx),
        Check::SubalgebraDims => check_subalgebra(ctx, degree),
        Check::L2l3 => check_l2l3(ctx),
        Check::C2 => check_c2(ctx),
        Check::OmegaLemmas => check_omega_lemmas(ctx),
        Check::HopfIdeal => check_hopf_ideal(ctx),
        Check::All => unreachable!(),
    }
}

fn run_verify(ctx: &Ctx, format: Format, check: Check, degree: usize) -> Result<bool> {
    let checks: Vec<Check> = if check == Check::All {
        Check::value_variants().iter().copied().filter(|c| *c != Check::All).collect()
    } else {
        vec![check]
    };
    let mut reports = Vec::new();
    for c in checks {
        reports.push(run_check(ctx, c, degree)?);
    }
    let passed = reports.iter().all(|r| r.passed);
    match format {
        Format::Text => {
            for r in &reports {
                println!("{}", r.to_text(ctx.genus));
            }
        }
        Format::Json if check == Check::All => {
            let all: Vec<Json> = reports.iter().map(|r| r.to_json(ctx.genus)).collect();
            println!("{}", json!({ "genus": ctx.genus, "passed": passed, "checks": all }));
        }
        Format::Json => println!("{}", reports[0].to_json(ctx.genus)),
    }
    Ok(passed)
}

// ---------------------------------------------------------------- other commands

fn run_decompose(ctx: &Ctx, format: Format, target: &str) -> Result<bool> {
    if target == "l2l3" {
        return run_verify(ctx, format, Check::L2l3, 0);
    }
    let parts = target.strip_prefix("lambda=").ok_or_else(|| anyhow!("target must be `l2l3` or `lambda=<parts>`"))?;
    let parts: Vec<u32> = parts.split(',').map(|p| p.trim().parse()).collect::<std::result::Result<_, _>>()?;
    let lambda = Partition::new(parts);
    let m = littlewood_restriction(&lambda, ctx.genus)?;
    match format {
        Format::Text => {
            for (l, k) in &m {
                println!("{k} x {l}  (dim {})", sp_dim(l));
            }
        }
        Format::Json => println!(
            "{}",
            json!({ "genus": ctx.genus, "partition": lambda.to_string(), "restriction": irrep_json(&m) })
        ),
    }
    Ok(true)
}

fn load_lie(spec: &str) -> Result<MetrizedLie> {
    if spec == "sl2" {
        return Ok(MetrizedLie::sl2());
    }
    if let Some(rest) = spec.strip_prefix("abelian") {
        let n = match rest.strip_prefix(':') {
            Some(n) => n.parse().context("abelian dimension")?,
            None if rest.is_empty() => 1,
            None => bail!("unknown Lie algebra {spec:?}"),
        };
        return Ok(MetrizedLie::abelian(n));
    }
    let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
    Ok(MetrizedLie::from_json(&text)?)
}

fn poly_json(p: &PolyTensor) -> Json {
    let terms: Vec<Json> = p
        .terms()
        .map(|((t, m), c)| {
            let mono: Vec<Json> =
                m.iter().map(|(v, e)| json!({ "slot": v.lie, "label": v.label.to_string(), "exp": e })).collect();
            json!({ "coeff": fmt_q(c), "t": t, "monomial": mono })
        })
        .collect();
    Json::Array(terms)
}

fn poly_text(p: &PolyTensor) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = p
        .terms()
        .map(|((t, m), c)| {
            let mut s = format!("{}*t^{t}", fmt_q(c));
            for (v, e) in m {
                s.push_str(&format!("*x{}_{}", v.lie, v.label));
                if *e > 1 {
                    s.push_str(&format!("^{e}"));
                }
            }
            s
        })
        .collect();
    terms.join(" + ")
}

fn run_weight(ctx: &Ctx, format: Format, lie: &str, expr: &str) -> Result<()> {
    let lie = load_lie(lie)?;
    let x = ctx.parse(expr)?;
    let w = weight_element(&x, &lie, ctx.genus)?;
    match format {
        Format::Text => println!("{}", poly_text(&w)),
        Format::Json => println!("{}", json!({ "genus": ctx.genus, "terms": poly_json(&w) })),
    }
    Ok(())
}

fn pair_name(p: &Pair) -> String {
    let t = |x: &[BasisVector; 3]| format!("{}^{}^{}", x[0], x[1], x[2]);
    format!("{} & {}", t(&p.0), t(&p.1))
}

fn matrix_json(rows: Vec<String>, cols: Vec<String>, columns: &[SparseVec<Diagram>]) -> Json {
    let index: BTreeMap<&str, usize> = rows.iter().enumerate().map(|(i, r)| (r.as_str(), i)).collect();
    let mut entries = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        for (d, c) in col.entries() {
            entries.push(json!([index[print_diagram(d).as_str()], j, fmt_q(c)]));
        }
    }
    json!({ "rows": rows, "cols": cols, "entries": entries })
}

fn run_export(ctx: &Ctx, matrix: Matrix, degree: usize) -> Result<()> {
    let (cols, columns) = match matrix {
        Matrix::B2 => {
            let (dom, columns) = b2_columns(ctx.genus, &ctx.caps)?;
            (dom.iter().map(pair_name).collect::<Vec<_>>(), columns)
        }
        Matrix::Nf => {
            ctx.caps.check_degree(degree)?;
            let qb = quotient_basis(ctx.genus, degree, &ctx.caps)?;
            let columns: Vec<SparseVec<Diagram>> =
                qb.free.iter().map(|d| SparseVec::from_element(&normal_form(&Element::from_diagram(d)))).collect();
            (qb.free.iter().map(print_diagram).collect(), columns)
        }
    };
    let mut rows: Vec<String> = columns.iter().flat_map(|c| c.entries().iter().map(|(d, _)| print_diagram(d))).collect();
    rows.sort();
    rows.dedup();
    println!("{}", matrix_json(rows, cols, &columns));
    Ok(())
}

// ---------------------------------------------------------------- entry

fn run(cli: Cli) -> Result<bool> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let mut caps = Caps::from_env();
    caps.max_degree = cli.max_degree.unwrap_or(caps.max_degree);
    caps.max_genus = cli.max_genus.unwrap_or(caps.max_genus);
    caps.max_rows = cli.max_rows.unwrap_or(caps.max_rows);
    // the genus cap guards diagram enumeration; pure representation theory is exempt
    let pure_rep = matches!(cli.command, Command::Decompose { .. } | Command::Verify { check: Check::L2l3, .. });
    if !pure_rep {
        caps.check_genus(cli.genus)?;
    }
    let ctx = Ctx {
        genus: cli.genus,
        caps,
        deep: cli.deep,
        cache: (!cli.no_cache).then(|| Cache::new(&cli.cache_dir)),
    };
    let f = cli.format;
    match &cli.command {
        Command::Normalize { expr } => run_value(&ctx, f, expr)?,
        Command::Star { x, y } => emit_element(f, &normalize(&star(&ctx.parse(x)?, &ctx.parse(y)?))),
        Command::Bracket { x, y } => emit_element(f, &normalize(&bracket(&ctx.parse(x)?, &ctx.parse(y)?))),
        Command::Chi { expr } => emit_element(f, &chi(&ctx.parse(expr)?)),
        Command::Chiinv { expr } => emit_element(f, &chi_inv(&ctx.parse(expr)?)),
        Command::Dim { space, degree } => run_dim(&ctx, f, *space, *degree)?,
        Command::Verify { check, degree } => return run_verify(&ctx, f, *check, *degree),
        Command::Decompose { target } => return run_decompose(&ctx, f, target),
        Command::Weight { lie, expr } => run_weight(&ctx, f, lie, expr)?,
        Command::Export { matrix, degree } => run_export(&ctx, *matrix, *degree)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let cap = matches!(e.downcast_ref::<Error>(), Some(Error::CapExceeded { .. }));
            ExitCode::from(if cap { 2 } else { 1 })
        }
    }
}
