//! `parcoh`: command-line front end. Reports are JSON with sorted keys on
//! stdout (or `--out`); errors are JSON on stderr with exit codes
//! 1 verification failure, 2 parse, 3 validation, 4 budget.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use parcoh_core::bridge::{bridge_report, cohomology_of_finverse, BridgeError};
use parcoh_core::cohomology::{brute_force_cohomology, cohomology, report, CohomologyError, BRUTE_FORCE_LIMIT, DEFAULT_BUDGET};
use parcoh_core::crossed::{crossed_product, isomorphic, rho_by_closure, semidirect, ISO_LIMIT};
use parcoh_core::exel::{build_exel, ExelError};
use parcoh_core::fixtures;
use parcoh_core::group::FiniteGroup;
use parcoh_core::partial_module::{ModuleError, PartialGModule};
use parcoh_core::resolution::{cohomology_via_resolution, Resolution, ResolutionError};
use parcoh_core::schema::{self, SchemaError};
use parcoh_core::schur::{adjusted_catalog, component_r, coverage_check, FiniteField, KLinearModule, SchurError};
use parcoh_core::semigroup::InvSemigroup;
use parcoh_core::verify::{verify_fixtures, verify_kmodule, verify_module, VerifyReport};

#[derive(Parser)]
#[command(name = "parcoh", version, about = "Partial group cohomology of finite partial modules")]
struct Cli {
    /// Largest number of tuples in any cochain group.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = positive)]
    budget: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, env = "PARCOH_THREADS", value_parser = positive)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate one input.
    Validate(ValidateArgs),
    /// The Exel monoid of a group.
    Exel {
        #[arg(long)]
        group: PathBuf,
    },
    /// `Hⁿ(G, A)` by the coboundary route.
    Cohomology {
        #[command(flatten)]
        input: ModuleInput,
        #[arg(long, value_parser = degree)]
        degree: usize,
        /// Also enumerate cocycles and coboundaries when small enough.
        #[arg(long)]
        oracle: bool,
    },
    /// The crossed product `A∗G`, optionally with `A⋊𝒮(G)` and its `ρ`.
    Crossed {
        #[command(flatten)]
        input: ModuleInput,
        #[arg(long)]
        semidirect: bool,
    },
    /// The free resolution over `E(A)∗G`.
    Resolution {
        #[command(flatten)]
        input: ModuleInput,
        #[arg(long, value_parser = degree)]
        degree: usize,
        #[arg(long)]
        check_homotopy: bool,
    },
    /// Twistings, their classes and coverage over `GF(q)`.
    Schur {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        field: usize,
        /// Directory of K-linear module files; the generated catalog is used otherwise.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Largest carrier in the generated catalog.
        #[arg(long, default_value_t = 7)]
        max_carrier: usize,
    },
    /// Cohomology over a max-generated F-inverse monoid.
    Bridge {
        #[arg(long)]
        semigroup: Option<PathBuf>,
        /// Global module over `S/σ`; compared with `Â`.
        #[arg(long, conflicts_with = "smodule", required_unless_present = "smodule", requires = "semigroup")]
        gmodule: Option<PathBuf>,
        /// Strict S-module, pulled back to a partial module over `S/σ`.
        #[arg(long)]
        smodule: Option<PathBuf>,
        #[arg(long, value_parser = degree)]
        degree: usize,
    },
    /// Runs the cross-route invariant suite.
    Verify {
        /// Include every bundled fixture.
        #[arg(long)]
        fixtures: bool,
        #[arg(long)]
        module: Vec<PathBuf>,
        #[arg(long)]
        kmodule: Vec<PathBuf>,
        /// Fallback group for modules without a `"group"` key.
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long, value_parser = degree, default_value_t = 2)]
        degree: usize,
    },
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    group: Option<PathBuf>,
    #[arg(long)]
    semigroup: Option<PathBuf>,
    #[arg(long)]
    module: Option<PathBuf>,
    #[arg(long)]
    smodule: Option<PathBuf>,
    #[arg(long)]
    gmodule: Option<PathBuf>,
    #[arg(long)]
    kmodule: Option<PathBuf>,
}

#[derive(Args)]
struct ModuleInput {
    /// Partial module file.
    #[arg(long)]
    module: PathBuf,
    /// Group for a module file without a `"group"` key.
    #[arg(long)]
    group: Option<PathBuf>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn degree(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n <= 4 => Ok(n),
        Ok(_) => Err("degree must be at most 4".into()),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug)]
enum CliError {
    Parse { path: String, detail: String },
    Validation { object: String, detail: String },
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Validation { .. } => 3,
            CliError::Budget(_) => 4,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            CliError::Parse { path, detail } => json!({"error": "parse", "path": path, "detail": detail}),
            CliError::Validation { object, detail } => json!({"error": "validation", "object": object, "detail": detail}),
            CliError::Budget(detail) => json!({"error": "budget", "detail": detail}),
        }
    }

    fn validation(object: &str, e: impl ToString) -> Self {
        CliError::Validation { object: object.to_string(), detail: e.to_string() }
    }
}

fn schema_error(path: &Path, e: SchemaError) -> CliError {
    match e {
        SchemaError::Parse(detail) => CliError::Parse { path: path.display().to_string(), detail },
        SchemaError::Invalid { object, detail } => CliError::Validation { object: object.into(), detail },
    }
}

fn cohomology_error(e: CohomologyError) -> CliError {
    match e {
        CohomologyError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        e => CliError::validation("cohomology", e),
    }
}

fn resolution_error(e: ResolutionError) -> CliError {
    match e {
        ResolutionError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        ResolutionError::Cohomology(c) => cohomology_error(c),
        e => CliError::validation("resolution", e),
    }
}

fn exel_error(e: ExelError) -> CliError {
    match e {
        ExelError::GroupTooLarge(_) => CliError::Budget(e.to_string()),
        e => CliError::validation("exel", e),
    }
}

fn module_error(e: ModuleError) -> CliError {
    match e {
        ModuleError::Exel(x) => exel_error(x),
        e => CliError::validation("pmodule", e),
    }
}

fn schur_error(e: SchurError) -> CliError {
    match e {
        SchurError::BudgetExceeded(_) => CliError::Budget(e.to_string()),
        SchurError::Cohomology(c) => cohomology_error(c),
        e => CliError::validation("kmodule", e),
    }
}

fn bridge_error(e: BridgeError) -> CliError {
    match e {
        BridgeError::Cohomology(c) => cohomology_error(c),
        BridgeError::Resolution(r) => resolution_error(r),
        BridgeError::Exel(x) => exel_error(x),
        e => CliError::validation("bridge", e),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Parse { path: path.display().to_string(), detail: e.to_string() })
}

fn load_group(path: &Path) -> Result<FiniteGroup, CliError> {
    schema::parse_group(&read(path)?).map_err(|e| schema_error(path, e))
}

fn load_semigroup(path: &Path) -> Result<InvSemigroup, CliError> {
    schema::parse_semigroup(&read(path)?).map_err(|e| schema_error(path, e))
}

fn optional_group(path: Option<&Path>) -> Result<Option<FiniteGroup>, CliError> {
    path.map(load_group).transpose()
}

fn load_module(path: &Path, group: Option<&FiniteGroup>) -> Result<PartialGModule, CliError> {
    schema::parse_pmodule(&read(path)?, group).map_err(|e| schema_error(path, e))
}

fn load_kmodule(path: &Path, group: Option<&FiniteGroup>) -> Result<KLinearModule, CliError> {
    schema::parse_kmodule(&read(path)?, group).map_err(|e| schema_error(path, e))
}

impl ModuleInput {
    fn load(&self) -> Result<PartialGModule, CliError> {
        let g = optional_group(self.group.as_deref())?;
        load_module(&self.module, g.as_ref())
    }
}

fn idempotents(table: &[Vec<usize>]) -> Vec<usize> {
    (0..table.len()).filter(|&i| table[i][i] == i).collect()
}

fn module_summary(m: &PartialGModule) -> Value {
    json!({
        "group_order": m.group().order(),
        "monoid_order": m.monoid().len(),
        "idempotents": m.monoid().idempotents(),
        "inverse_module": m.is_inverse_module(),
        "unit_idems": m.unit_idems(),
    })
}

fn validate(args: &ValidateArgs) -> Result<Value, CliError> {
    let g = optional_group(args.group.as_deref())?;
    if let Some(p) = &args.module {
        let m = load_module(p, g.as_ref())?;
        return Ok(json!({"object": "pmodule", "valid": true, "summary": module_summary(&m)}));
    }
    if let Some(p) = &args.gmodule {
        let m = schema::parse_gmodule(&read(p)?, g.as_ref()).map_err(|e| schema_error(p, e))?;
        return Ok(json!({"object": "gmodule", "valid": true, "summary": module_summary(&m)}));
    }
    if let Some(p) = &args.kmodule {
        let k = load_kmodule(p, g.as_ref())?;
        return Ok(json!({
            "object": "kmodule",
            "valid": true,
            "field": k.field().order(),
            "domain": k.domain(),
            "summary": module_summary(k.module()),
        }));
    }
    if let Some(p) = &args.smodule {
        let sm = schema::parse_smodule(&read(p)?).map_err(|e| schema_error(p, e))?;
        return Ok(json!({
            "object": "smodule",
            "valid": true,
            "strict": sm.is_strict(),
            "alpha_surjective": sm.alpha_surjective(),
        }));
    }
    if let Some(p) = &args.semigroup {
        let s = load_semigroup(p)?;
        return Ok(json!({
            "object": "invsemigroup",
            "valid": true,
            "order": s.len(),
            "idempotents": s.idempotents(),
            "identity": s.identity(),
            "classification": s.classify(),
        }));
    }
    if let Some(g) = g {
        return Ok(json!({"object": "group", "valid": true, "order": g.order(), "abelian": g.is_abelian()}));
    }
    Err(CliError::Parse { path: String::new(), detail: "validate needs one input".into() })
}

fn exel(path: &Path) -> Result<Value, CliError> {
    let g = load_group(path)?;
    let e = build_exel(&g).map_err(exel_error)?;
    let members = |set: u32| (0..g.order()).filter(|&x| set & (1 << x) != 0).collect::<Vec<_>>();
    let elements: Vec<Value> = e
        .elements()
        .iter()
        .enumerate()
        .map(|(i, el)| {
            let (xs, y) = e.canonical_form(i);
            json!({"index": i, "set": members(el.set), "g": el.g, "canonical_form": {"epsilons": xs, "bracket": y}})
        })
        .collect();
    Ok(json!({
        "order": e.len(),
        "elements": elements,
        "idempotents": e.semigroup().idempotents(),
        "sigma_classes": e.sigma().classes(),
    }))
}

fn run_cohomology(input: &ModuleInput, n: usize, oracle: bool, budget: usize) -> Result<Value, CliError> {
    let m = input.load()?;
    let h = cohomology(&m, n, budget).map_err(cohomology_error)?;
    let mut out = serde_json::to_value(report(&m, &h)).expect("report serializes");
    if oracle {
        let b = brute_force_cohomology(&m, n, BRUTE_FORCE_LIMIT).map_err(cohomology_error)?;
        out["oracle"] = json!(b);
        out["oracle_agrees"] = json!(b.as_ref().map(|b| b.as_slice() == h.invariant_factors()));
    }
    Ok(out)
}

fn crossed(input: &ModuleInput, with_semidirect: bool) -> Result<Value, CliError> {
    let m = input.load()?;
    let c = crossed_product(&m);
    let mut out = json!({
        "elements": c.elements,
        "table": c.table,
        "idempotents": idempotents(&c.table),
    });
    if with_semidirect {
        let (_, sm) = m.to_s_module().map_err(module_error)?;
        let sd = semidirect(&sm);
        let l = &sd.lambda_product;
        let classes: Vec<Vec<(usize, usize)>> = sd.rho.classes().iter().map(|k| k.iter().map(|&i| l.elements[i]).collect()).collect();
        let iso = (c.len() <= ISO_LIMIT && m.is_inverse_module()).then(|| isomorphic(&sd.quotient, &c.table).is_some());
        out["semidirect"] = json!({
            "lambda_product": {"elements": l.elements, "table": l.table},
            "rho_classes": classes,
            "rho_matches_closure": sd.rho == rho_by_closure(&sm, l),
            "quotient": sd.quotient,
            "isomorphic_to_crossed_product": iso,
        });
    }
    Ok(out)
}

fn resolution(input: &ModuleInput, n: usize, check: bool, budget: usize) -> Result<Value, CliError> {
    let m = input.load()?;
    let tilde_used = !m.is_inverse_module();
    let module = if tilde_used { m.make_tilde().0 } else { m.clone() };
    let r = Resolution::new(&module, budget).map_err(resolution_error)?;
    let generators = (0..=n).map(|k| r.generators(k).map(|g| g.len())).collect::<Result<Vec<_>, _>>().map_err(resolution_error)?;
    let direct = cohomology(&m, n, budget).map_err(cohomology_error)?;
    let resolved = cohomology_via_resolution(&m, n, budget).map_err(resolution_error)?;
    let homotopy = if check { Some(r.check_homotopy(n).map_err(resolution_error)?) } else { None };
    Ok(json!({
        "tilde_used": tilde_used,
        "s_prime_elements": r.s_prime_elements(),
        "generators": generators,
        "cohomology": {
            "direct": direct.invariant_factors(),
            "resolution": resolved.invariant_factors(),
        },
        "homotopy": homotopy,
    }))
}

fn schur(group: &Path, q: usize, catalog: Option<&Path>, max_carrier: usize) -> Result<Value, CliError> {
    let g = load_group(group)?;
    let field = FiniteField::new(q).map_err(|e| CliError::validation("field", e))?;
    let modules: Vec<(String, KLinearModule)> = match catalog {
        Some(dir) => {
            let mut paths: Vec<PathBuf> = fs::read_dir(dir)
                .map_err(|e| CliError::Parse { path: dir.display().to_string(), detail: e.to_string() })?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            paths.sort();
            paths
                .iter()
                .map(|p| Ok((p.file_name().unwrap().to_string_lossy().into_owned(), load_kmodule(p, Some(&g))?)))
                .collect::<Result<_, CliError>>()?
        }
        None => adjusted_catalog(&g, field, max_carrier)
            .map_err(schur_error)?
            .into_iter()
            .enumerate()
            .map(|(i, k)| (format!("catalog-{i}"), k))
            .collect(),
    };
    let mut components = Vec::new();
    for (name, k) in &modules {
        let mut c = serde_json::to_value(component_r(k).map_err(schur_error)?).expect("report serializes");
        c["module"] = json!(name);
        c["carrier"] = json!(k.module().monoid().len());
        components.push(c);
    }
    let catalog: Vec<KLinearModule> = modules.into_iter().map(|(_, k)| k).collect();
    let coverage = coverage_check(&g, &field, &catalog).map_err(schur_error)?;
    Ok(json!({
        "field": q,
        "components": components,
        "coverage": coverage,
        "fully_covered": coverage.fully_covered(),
    }))
}

fn bridge(semigroup: Option<&Path>, gmodule: Option<&Path>, smodule: Option<&Path>, n: usize, budget: usize) -> Result<Value, CliError> {
    if let Some(p) = smodule {
        let sm = schema::parse_smodule(&read(p)?).map_err(|e| schema_error(p, e))?;
        if let Some(sp) = semigroup {
            if load_semigroup(sp)?.table() != sm.semigroup().table() {
                return Err(CliError::validation("smodule", "--semigroup differs from the S-module's semigroup"));
            }
        }
        let (m, h) = cohomology_of_finverse(sm.semigroup(), &sm, n, budget).map_err(bridge_error)?;
        return Ok(json!({
            "degree": n,
            "group_order": m.group().order(),
            "pulled_back": module_summary(&m),
            "invariant_factors": h.invariant_factors(),
        }));
    }
    let (sp, ap) = (semigroup.expect("clap requires --semigroup"), gmodule.expect("clap requires --gmodule"));
    let s = load_semigroup(sp)?;
    let (_, quotient) = s.min_group_congruence();
    let a = schema::parse_gmodule(&read(ap)?, Some(&quotient)).map_err(|e| schema_error(ap, e))?;
    let r = bridge_report(&s, &a, n, budget).map_err(bridge_error)?;
    let agrees = r.agrees();
    let mut out = serde_json::to_value(r).expect("report serializes");
    out["agrees"] = json!(agrees);
    Ok(out)
}

fn verify(fixtures_flag: bool, modules: &[PathBuf], kmodules: &[PathBuf], group: Option<&Path>, n: usize, budget: usize) -> Result<(Value, bool), CliError> {
    if !fixtures_flag && modules.is_empty() && kmodules.is_empty() {
        return Err(CliError::Parse { path: String::new(), detail: "verify needs --fixtures or inputs".into() });
    }
    let g = optional_group(group)?;
    let mut report = if fixtures_flag { verify_fixtures(budget) } else { VerifyReport::default() };
    if fixtures_flag {
        bundled_json(&mut report);
    }
    for p in modules {
        verify_module(&mut report, &p.display().to_string(), &load_module(p, g.as_ref())?, n, budget);
    }
    for p in kmodules {
        verify_kmodule(&mut report, &p.display().to_string(), &load_kmodule(p, g.as_ref())?);
    }
    let passed = report.passed();
    let mut out = serde_json::to_value(&report).expect("report serializes");
    out["passed"] = json!(passed);
    Ok((out, passed))
}

/// The JSON fixtures shipped with the binary parse to the library fixtures.
fn bundled_json(report: &mut VerifyReport) {
    use parcoh_core::verify::{Check, Status};
    let z2 = fixtures::z2();
    let cases: [(&str, bool); 8] = [
        ("z2", schema::parse_group(include_str!("../fixtures/z2.json")).ok() == Some(z2.clone())),
        ("z3", schema::parse_group(include_str!("../fixtures/z3.json")).ok() == Some(fixtures::z3())),
        ("klein", schema::parse_group(include_str!("../fixtures/klein.json")).ok() == Some(fixtures::klein())),
        ("s3", schema::parse_group(include_str!("../fixtures/s3.json")).ok() == Some(fixtures::s3())),
        ("sign", schema::parse_pmodule(include_str!("../fixtures/sign.json"), None).ok() == Some(fixtures::sign_module())),
        ("gf3-partial", schema::parse_kmodule(include_str!("../fixtures/gf3-partial.json"), None).ok() == Some(fixtures::gf3_partial_module())),
        (
            "z2-with-zero",
            schema::parse_semigroup(include_str!("../fixtures/z2-with-zero.json")).map(|s| s.table().to_vec()).ok()
                == Some(fixtures::z2_with_zero().table().to_vec()),
        ),
        (
            "exel-z2",
            schema::parse_semigroup(include_str!("../fixtures/exel-z2.json")).map(|s| s.table().to_vec()).ok()
                == Some(fixtures::exel_z2().semigroup().table().to_vec()),
        ),
    ];
    for (name, ok) in cases {
        report.checks.push(Check {
            check: "fixture-json".into(),
            subject: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: String::new(),
        });
    }
}

fn emit(value: &Value, out: Option<&Path>) -> Result<(), CliError> {
    let text = schema::to_json(value) + "\n";
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Parse { path: p.display().to_string(), detail: e.to_string() }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let budget = cli.budget;
    let (value, passed) = match &cli.command {
        Command::Validate(args) => (validate(args)?, true),
        Command::Exel { group } => (exel(group)?, true),
        Command::Cohomology { input, degree, oracle } => (run_cohomology(input, *degree, *oracle, budget)?, true),
        Command::Crossed { input, semidirect } => (crossed(input, *semidirect)?, true),
        Command::Resolution { input, degree, check_homotopy } => (resolution(input, *degree, *check_homotopy, budget)?, true),
        Command::Schur { group, field, catalog, max_carrier } => (schur(group, *field, catalog.as_deref(), *max_carrier)?, true),
        Command::Bridge { semigroup, gmodule, smodule, degree } => {
            (bridge(semigroup.as_deref(), gmodule.as_deref(), smodule.as_deref(), *degree, budget)?, true)
        }
        Command::Verify { fixtures, module, kmodule, group, degree } => verify(*fixtures, module, kmodule, group.as_deref(), *degree, budget)?,
    };
    emit(&value, cli.out.as_deref())?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", schema::to_json(&e.to_json()));
            ExitCode::from(e.code())
        }
    }
}
