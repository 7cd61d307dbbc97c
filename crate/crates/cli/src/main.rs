use clap::{Args, Parser, Subcommand};
use grachs::complex::{differential, is_maurer_cartan, l3, lie_bracket, theta2, upsilon_s};
use grachs::enumerate::EnumOptions;
use grachs::homology::{apply_delta, cohomology, is_coboundary, Certificate, Coboundary};
use grachs::json::{self, RunReport};
use grachs::representation::graphops::theta_bracket_6;
use grachs::representation::obstruction::{obstruction_closed_form, obstruction_via_rep, ObstructionFit};
use grachs::representation::{rep, Flavor};
use grachs::superalgebra::components::{
    classify, constraints, epsilon3, fixture_bialgebra, fixture_coboundary, fixture_poisson, hamiltonian,
    hamiltonian_square, random_tensor, structure_name,
};
use grachs::superalgebra::{BialgebroidComponents, Chart, Tensor, XPoly};
use grachs::theta::{self, ThetaPair};
use grachs::{Error, GraphVector, Signature};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "grachs", version, about = "Graph complexes, their cohomology and their action on bialgebroid data")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Ambient dimension.
    #[arg(long, global = true, default_value_t = 3)]
    d: u32,
    /// Number of extra edge colors.
    #[arg(long, global = true, default_value_t = 0)]
    colors: usize,
    /// Acyclic directions, e.g. `black,c1`.
    #[arg(long, global = true, value_delimiter = ',')]
    oriented: Vec<String>,
    /// Restrict to connected graphs.
    #[arg(long, global = true)]
    connected: bool,
    /// Largest basis an enumeration may produce; defaults to GRACHS_BUDGET.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Drop graphs with a vertex of smaller valence.
    #[arg(long, global = true, default_value_t = 0)]
    min_valence: usize,
    /// Worker thread cap.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the main output document here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Operations on graph vectors.
    Gc {
        #[command(subcommand)]
        op: GcOp,
    },
    /// Dimension of the cohomology at one bidegree.
    Cohomology {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Include a representative of a nonzero class.
        #[arg(long)]
        witness: bool,
    },
    /// Checks on bialgebroid component data.
    Bialgebroid {
        #[command(subcommand)]
        op: BialgebroidOp,
    },
    /// The black-oriented cochain and its bi-oriented coboundary.
    Theta3 {
        #[command(subcommand)]
        op: Theta3Op,
    },
    /// Graphs acting on functions.
    Rep {
        #[command(subcommand)]
        op: RepOp,
    },
    /// Example component sets.
    Fixtures {
        #[command(subcommand)]
        op: FixtureOp,
    },
}

#[derive(Args, Clone)]
struct VectorSource {
    /// Graph vector JSON files.
    #[arg(long)]
    input: Vec<PathBuf>,
    /// Named vector: upsilon_s, theta2 or l3.
    #[arg(long)]
    builtin: Vec<String>,
}

#[derive(Subcommand)]
enum GcOp {
    Differential(VectorSource),
    Bracket(VectorSource),
    McCheck(VectorSource),
    Cocycle(VectorSource),
    Coboundary(VectorSource),
}

#[derive(Args)]
struct DataArgs {
    /// Components JSON.
    #[arg(long)]
    data: PathBuf,
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Pair written by `theta3 solve`; solved afresh when absent.
    #[arg(long)]
    pair: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BialgebroidOp {
    Check(DataArgs),
    Classify(DataArgs),
    Obstruction(PairArgs),
    Theta6(PairArgs),
}

#[derive(Subcommand)]
enum Theta3Op {
    Solve,
    Verify {
        #[arg(long)]
        pair: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum RepOp {
    /// Evaluates an operad element on functions; the flavor follows its color count.
    Apply {
        /// Operad element JSON.
        #[arg(long)]
        graph: PathBuf,
        /// One function JSON per vertex.
        #[arg(long)]
        function: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FixtureOp {
    /// `π` with `π^{12} = −π^{21} = x₁^deg`, or read from `--pi`.
    Poisson {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        deg: u8,
        #[arg(long)]
        pi: Option<PathBuf>,
    },
    /// Random `ρ, f` and `Λ`; `--zero-lambda` sets `Λ = 0`.
    Coboundary {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        zero_lambda: bool,
    },
    /// `f = ε` on three generators; `--dual` also sets `C = ε`.
    Bialgebra {
        #[arg(long)]
        dual: bool,
    },
}

struct Outcome {
    outputs: Value,
    verdict: bool,
    document: Option<Value>,
    certificates: Vec<String>,
}

impl Outcome {
    fn ok(outputs: Value) -> Outcome {
        Outcome { outputs, verdict: true, document: None, certificates: Vec::new() }
    }

    fn verdict(outputs: Value, verdict: bool) -> Outcome {
        Outcome { outputs, verdict, document: None, certificates: Vec::new() }
    }

    fn with_document(mut self, doc: Value) -> Outcome {
        self.document = Some(doc);
        self
    }
}

struct Ctx {
    global: Global,
    inputs: Vec<Value>,
}

impl Ctx {
    fn signature(&self) -> grachs::Result<Signature> {
        let names: Vec<&str> = self.global.oriented.iter().map(String::as_str).collect();
        let mask = Signature::parse_oriented(&names, self.global.colors)?;
        Signature::new(self.global.d, self.global.colors, mask, self.global.connected)
    }

    fn opts(&self) -> EnumOptions {
        let opts = match self.global.budget {
            Some(b) => EnumOptions::with_budget(b),
            None => EnumOptions::default(),
        };
        opts.with_min_valence(self.global.min_valence)
    }

    fn read(&mut self, path: &Path) -> grachs::Result<Value> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let v = json::parse_text(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        self.inputs.push(v.clone());
        Ok(v)
    }

    fn vectors(&mut self, src: &VectorSource) -> grachs::Result<Vec<GraphVector>> {
        let mut out = Vec::new();
        for p in &src.input {
            let v = self.read(p)?;
            out.push(json::vector_from_json(&v)?);
        }
        for name in &src.builtin {
            self.inputs.push(json!({ "builtin": name }));
            out.push(match name.as_str() {
                "upsilon_s" => upsilon_s(self.signature()?),
                "theta2" => theta2(),
                "l3" => l3(),
                _ => return Err(Error::Parse(format!("unknown builtin {name:?}"))),
            });
        }
        Ok(out)
    }

    fn one_vector(&mut self, src: &VectorSource) -> grachs::Result<GraphVector> {
        let mut v = self.vectors(src)?;
        if v.len() != 1 {
            return Err(Error::Parse(format!("expected one input vector, got {}", v.len())));
        }
        Ok(v.remove(0))
    }

    fn components(&mut self, data: &DataArgs) -> grachs::Result<BialgebroidComponents> {
        let v = self.read(&data.data)?;
        json::components_from_json(&v)
    }

    fn pair(&mut self, path: &Option<PathBuf>) -> grachs::Result<ThetaPair> {
        match path {
            Some(p) => {
                let v = self.read(p)?;
                json::theta_pair_from_json(&v)
            }
            None => Ok(theta::solve()?.0),
        }
    }
}

fn certificate_json(c: &Certificate) -> Value {
    let functional: Vec<Value> =
        c.functional.iter().map(|(g, x)| json!({"q": x.to_string(), "g": json::graph_to_json(g)})).collect();
    json!({ "functional": functional })
}

fn tensor_json(t: &Tensor, m: usize) -> Value {
    json::tensor_to_json(t, m)
}

fn run_gc(ctx: &mut Ctx, op: &GcOp) -> grachs::Result<Outcome> {
    Ok(match op {
        GcOp::Differential(src) => {
            let a = ctx.one_vector(src)?;
            let da = differential(&a)?;
            let doc = json::vector_to_json(&da);
            Outcome::ok(json!({ "terms": da.len(), "zero": da.is_zero() })).with_document(doc)
        }
        GcOp::Bracket(src) => {
            let v = ctx.vectors(src)?;
            if v.len() != 2 {
                return Err(Error::Parse(format!("bracket needs two input vectors, got {}", v.len())));
            }
            let b = lie_bracket(&v[0], &v[1])?;
            let doc = json::vector_to_json(&b);
            Outcome::ok(json!({ "terms": b.len(), "zero": b.is_zero() })).with_document(doc)
        }
        GcOp::McCheck(src) => {
            let a = ctx.one_vector(src)?;
            let (ok, defect) = is_maurer_cartan(&a)?;
            let doc = json::vector_to_json(&defect);
            Outcome::verdict(json!({ "verdict": ok, "defect_terms": defect.len() }), ok).with_document(doc)
        }
        GcOp::Cocycle(src) => {
            let a = ctx.one_vector(src)?;
            let da = apply_delta(&a);
            let ok = da.is_zero();
            Outcome::verdict(json!({ "verdict": ok, "differential_terms": da.len() }), ok)
                .with_document(json::vector_to_json(&da))
        }
        GcOp::Coboundary(src) => {
            let a = ctx.one_vector(src)?;
            match is_coboundary(&a, ctx.opts())? {
                Coboundary::Exact { witness } => {
                    let doc = json::vector_to_json(&witness);
                    Outcome::verdict(json!({ "verdict": true, "witness_terms": witness.len() }), true)
                        .with_document(doc)
                }
                Coboundary::NotExact { certificate } => {
                    let doc = certificate_json(&certificate);
                    let hash = json::digest(&doc);
                    let mut out = Outcome::verdict(
                        json!({ "verdict": false, "certificate_size": certificate.functional.len() }),
                        false,
                    )
                    .with_document(doc);
                    out.certificates.push(hash);
                    out
                }
            }
        }
    })
}

fn run_cohomology(ctx: &mut Ctx, n: usize, k: usize, witness: bool) -> grachs::Result<Outcome> {
    let sig = ctx.signature()?;
    let r = cohomology(sig, n, k, ctx.opts(), witness)?;
    let mut out = Outcome::ok(json!({
        "sig": json::signature_to_json(&sig),
        "N": n,
        "k": k,
        "basis_size": r.basis_size,
        "dim_kernel": r.dim_kernel,
        "rank_image_in": r.rank_image_in,
        "cohomology_dim": r.cohomology_dim,
        "modular_check": r.modular_check,
    }));
    if let Some(w) = &r.witness {
        let doc = json::vector_to_json(w);
        out.certificates.push(json::digest(&doc));
        out.outputs["witness"] = doc.clone();
        out = out.with_document(doc);
    }
    Ok(out)
}

fn run_bialgebroid(ctx: &mut Ctx, op: &BialgebroidOp) -> grachs::Result<Outcome> {
    Ok(match op {
        BialgebroidOp::Check(data) => {
            let comp = ctx.components(data)?;
            let cs = constraints(&comp);
            let m = comp.chart().m;
            let tensors: Vec<Value> = cs.tensors.iter().map(|t| tensor_json(t, m)).collect();
            let square_zero = hamiltonian_square(&comp).is_zero();
            let ok = cs.all_zero();
            Outcome::verdict(
                json!({
                    "verdict": ok,
                    "violated": cs.violated(),
                    "hamiltonian_square_zero": square_zero,
                }),
                ok,
            )
            .with_document(json!({ "constraints": tensors }))
        }
        BialgebroidOp::Classify(data) => {
            let comp = ctx.components(data)?;
            let cls = classify(&hamiltonian(&comp));
            Outcome::ok(json!({
                "structure": structure_name(&comp),
                "violated": constraints(&comp).violated(),
                "hamiltonian": {
                    "lie_quasi": cls.lie_quasi,
                    "quasi_lie": cls.quasi_lie,
                    "lie": cls.lie,
                },
            }))
        }
        BialgebroidOp::Obstruction(args) => {
            let comp = ctx.components(&args.data)?;
            let pair = ctx.pair(&args.pair)?;
            let m = comp.chart().m;
            let cf = obstruction_closed_form(&comp);
            let vr = obstruction_via_rep(&pair.vartheta3, &comp)?;
            let fit = ObstructionFit::fit(&vr, &cf);
            Outcome::ok(json!({
                "closed_form_zero": cf.is_zero(),
                "via_rep_zero": vr.is_zero(),
                "proportional": fit.proportional,
                "lambda": fit.lambda.map(|l| l.to_string()),
            }))
            .with_document(json!({ "closed_form": tensor_json(&cf, m), "via_rep": tensor_json(&vr, m) }))
        }
        BialgebroidOp::Theta6(args) => {
            let comp = ctx.components(&args.data)?;
            let pair = ctx.pair(&args.pair)?;
            let v = theta_bracket_6(&pair.theta3, &hamiltonian(&comp))?;
            let doc = json::superpoly_to_json(&v);
            Outcome::ok(json!({ "zero": v.is_zero(), "terms": v.terms().count() })).with_document(doc)
        }
    })
}

fn run_theta3(ctx: &mut Ctx, op: &Theta3Op) -> grachs::Result<Outcome> {
    Ok(match op {
        Theta3Op::Solve => {
            let (pair, report) = theta::solve()?;
            let doc = json::theta_pair_to_json(&pair, &report.normalized_on);
            let mut out = Outcome::ok(json!({
                "candidates": report.candidates,
                "constraints": report.constraints,
                "solution_dim": report.solution_dim,
                "modular_check": report.modular_check,
                "counts": doc["metadata"]["counts"].clone(),
            }));
            for k in ["vartheta3", "theta3"] {
                if let Some(h) = doc["metadata"]["certificate_hashes"][k].as_str() {
                    out.certificates.push(h.to_string());
                }
            }
            out.with_document(doc)
        }
        Theta3Op::Verify { pair } => {
            let pair = ctx.pair(pair)?;
            let r = theta::verify_nontrivial(&pair)?;
            let ok = r.closed && r.certificate.is_some();
            let mut out = Outcome::verdict(
                json!({
                    "verdict": ok,
                    "closed": r.closed,
                    "exact_in_black": r.exact_in_black,
                    "not_exact_in_bioriented": r.certificate.is_some(),
                }),
                ok,
            );
            if let Some(c) = &r.certificate {
                let doc = certificate_json(c);
                out.certificates.push(json::digest(&doc));
                out = out.with_document(doc);
            }
            out
        }
    })
}

fn run_rep(ctx: &mut Ctx, op: &RepOp) -> grachs::Result<Outcome> {
    let RepOp::Apply { graph, function } = op;
    let v = ctx.read(graph)?;
    let element = json::operad_from_json(&v)?;
    let mut fs = Vec::new();
    for p in function {
        let v = ctx.read(p)?;
        fs.push(json::superpoly_from_json(&v)?);
    }
    let chart = match fs.first() {
        Some(f) => f.chart(),
        None => return Err(Error::Parse("rep apply needs at least one --function".into())),
    };
    let flavor = if element.signature().colors() == 0 { Flavor::Point } else { Flavor::Bialgebroid };
    let value = rep(&element, chart, flavor)?.apply(&fs)?;
    let doc = json::superpoly_to_json(&value);
    Ok(Outcome::ok(json!({ "flavor": format!("{flavor:?}"), "zero": value.is_zero(), "terms": value.terms().count() }))
        .with_document(doc))
}

fn run_fixtures(ctx: &mut Ctx, op: &FixtureOp) -> grachs::Result<Outcome> {
    let comp = match op {
        FixtureOp::Poisson { m, deg, pi } => {
            let pi = match pi {
                Some(p) => {
                    let v = ctx.read(p)?;
                    json::tensor_from_json(&v, &[*m, *m], *m)?
                }
                None => {
                    if *m < 2 {
                        return Err(Error::InvalidComponents("the default pi needs m >= 2".into()));
                    }
                    let mut e = [0u8; grachs::superalgebra::MAX_DIM];
                    e[0] = *deg;
                    let mut t = Tensor::zeros(&[*m, *m]);
                    t.set(&[0, 1], XPoly::monomial(e, grachs::rational::q(1)));
                    t.set(&[1, 0], XPoly::monomial(e, grachs::rational::q(-1)));
                    t
                }
            };
            fixture_poisson(*m, &pi)?
        }
        FixtureOp::Coboundary { m, n, seed, zero_lambda } => {
            let chart = Chart::new(*m, *n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let rho = random_tensor(&mut rng, &[*n, *m], *m, 1, &[]);
            let f = random_tensor(&mut rng, &[*n, *n, *n], *m, 1, &[0, 1]);
            let lambda = if *zero_lambda {
                Tensor::zeros(&[*n, *n])
            } else {
                random_tensor(&mut rng, &[*n, *n], *m, 1, &[0, 1])
            };
            fixture_coboundary(chart, &rho, &f, &lambda)?
        }
        FixtureOp::Bialgebra { dual } => {
            let c = if *dual { epsilon3() } else { Tensor::zeros(&[3, 3, 3]) };
            fixture_bialgebra(3, epsilon3(), c, Tensor::zeros(&[3, 3, 3]), Tensor::zeros(&[3, 3, 3]))?
        }
    };
    let doc = json::components_to_json(&comp);
    Ok(Outcome::ok(json!({ "structure": structure_name(&comp), "violated": constraints(&comp).violated() }))
        .with_document(doc))
}

fn command_name(c: &Command) -> String {
    let (head, tail) = match c {
        Command::Gc { op } => (
            "gc",
            match op {
                GcOp::Differential(_) => "differential",
                GcOp::Bracket(_) => "bracket",
                GcOp::McCheck(_) => "mc-check",
                GcOp::Cocycle(_) => "cocycle",
                GcOp::Coboundary(_) => "coboundary",
            },
        ),
        Command::Cohomology { .. } => ("cohomology", ""),
        Command::Bialgebroid { op } => (
            "bialgebroid",
            match op {
                BialgebroidOp::Check(_) => "check",
                BialgebroidOp::Classify(_) => "classify",
                BialgebroidOp::Obstruction(_) => "obstruction",
                BialgebroidOp::Theta6(_) => "theta6",
            },
        ),
        Command::Theta3 { op } => (
            "theta3",
            match op {
                Theta3Op::Solve => "solve",
                Theta3Op::Verify { .. } => "verify",
            },
        ),
        Command::Rep { .. } => ("rep", "apply"),
        Command::Fixtures { op } => (
            "fixtures",
            match op {
                FixtureOp::Poisson { .. } => "poisson",
                FixtureOp::Coboundary { .. } => "coboundary",
                FixtureOp::Bialgebra { .. } => "bialgebra",
            },
        ),
    };
    if tail.is_empty() {
        head.to_string()
    } else {
        format!("{head} {tail}")
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    if let Some(t) = cli.global.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(|e| e.to_string())?;
    }
    let start = Instant::now();
    let name = command_name(&cli.command);
    let mut ctx = Ctx { global: cli.global, inputs: Vec::new() };
    let outcome = match &cli.command {
        Command::Gc { op } => run_gc(&mut ctx, op),
        Command::Cohomology { n, k, witness } => run_cohomology(&mut ctx, *n, *k, *witness),
        Command::Bialgebroid { op } => run_bialgebroid(&mut ctx, op),
        Command::Theta3 { op } => run_theta3(&mut ctx, op),
        Command::Rep { op } => run_rep(&mut ctx, op),
        Command::Fixtures { op } => run_fixtures(&mut ctx, op),
    }
    .map_err(|e| e.to_string())?;
    let mut certificates = outcome.certificates;
    if let (Some(path), Some(doc)) = (&ctx.global.out, &outcome.document) {
        std::fs::write(path, json::to_text(doc)).map_err(|e| format!("{}: {e}", path.display()))?;
        certificates.push(json::digest(doc));
    }
    let report = RunReport {
        command: name,
        inputs_digest: json::digest(&Value::Array(ctx.inputs)),
        outputs: outcome.outputs,
        timing_ms: start.elapsed().as_millis(),
        certificates,
    };
    print!("{}", json::to_text(&report.to_json()));
    Ok(outcome.verdict)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage_error = e.use_stderr();
            let _ = e.print();
            return if usage_error { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
