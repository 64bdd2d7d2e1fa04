use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use dv_core::generators::{self, Graph, RNG_ALGORITHM};
use dv_core::hitting_set::{dv_to_hitting_set, greedy_factor_h, hitting_set_to_dv, hs_kernelize, kernelize_h_k};
use dv_core::matrix::restrict;
use dv_core::reductions::{apply_rule_inessential, dominance_reduce, kernelize_sigma_k, preprocess_binary, RuleReport};
use dv_core::solvers::{analyze_weight_classes, classify, reduce_binary, solve_with};
use dv_core::sunflower::{sunflower_core, weak_delta_lambda};
use dv_core::{distance_profile, io, DistanceProfile, DvError, Execution, Instance, Kernel, Matrix, Regime, Solution};
use serde_json::json;

use crate::args::{ClassifyArgs, GenerateArgs, KernelArgs, KernelParam, Kind, ReduceArgs, Rule, SolveArgs, VerifyArgs};
use crate::output::{usage, CliError, Report, Verdict};

/// The parsed `--input` file.
pub enum Input {
    Matrix(Matrix),
    HittingSet(String),
    Graph(Graph),
}

pub struct Loaded {
    pub input: Option<Input>,
    pub digest: Option<String>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(bytes))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

/// Reads `--input`. Files ending in `.hs` are hitting set instances (their
/// budget arrives later with `--k`); `graph` selects the graph format.
pub fn load(path: Option<&Path>, graph: bool) -> Result<Loaded, CliError> {
    let Some(path) = path else {
        return Ok(Loaded { input: None, digest: None });
    };
    let text = read(path)?;
    let digest = Some(sha256_hex(text.as_bytes()));
    let input = if graph {
        Input::Graph(io::parse_graph(&text)?)
    } else if path.extension().is_some_and(|e| e == "hs") {
        Input::HittingSet(text)
    } else {
        Input::Matrix(io::parse_matrix(&text)?)
    };
    Ok(Loaded { input: Some(input), digest })
}

fn need(input: Option<Input>) -> Result<Input, CliError> {
    input.ok_or_else(|| usage("missing --input PATH"))
}

/// The matrix of a DV input, or of the image of a hitting set input.
fn instance(input: Option<Input>, k: usize) -> Result<Instance, CliError> {
    match need(input)? {
        Input::Matrix(m) => Ok(Instance::new(m, k)),
        Input::HittingSet(text) => Ok(hitting_set_to_dv(&io::parse_hitting_set(&text, k)?)?),
        Input::Graph(_) => Err(usage("expected a matrix or hitting set input")),
    }
}

fn matrix(input: Option<Input>) -> Result<Matrix, CliError> {
    Ok(instance(input, 0)?.matrix)
}

fn profile_of(m: &Matrix) -> Result<Option<DistanceProfile>, CliError> {
    Ok(if m.n() >= 2 { Some(distance_profile(m)?) } else { None })
}

fn write_or_return(path: Option<&PathBuf>, content: String) -> Result<String, CliError> {
    match path {
        Some(p) => {
            fs::write(p, content).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))?;
            Ok(format!("wrote {}", p.display()))
        }
        None => Ok(content.trim_end_matches('\n').to_string()),
    }
}

pub fn solve(input: Option<Input>, args: &SolveArgs) -> Result<Report, CliError> {
    let inst = instance(input, args.k)?;
    let exec = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let out = solve_with(&inst, args.strategy(), exec)?;
    let mut report = match &out.solution {
        Some(s) => Report::new(Verdict::Yes, "yes", s.to_string()),
        None => Report::new(Verdict::No, "no", format!("no solution with at most {} columns", inst.k())),
    };
    report.solution = out.solution.clone();
    report.profile = out.report.profile;
    report.regime = out.report.regime.clone();
    report.details = json!({ "k": inst.k(), "solve": out.report });
    Ok(report)
}

fn regime_line(regime: &Regime, p: DistanceProfile, sigma: usize) -> String {
    let extra = if sigma > 2 { format!(", |Σ|={sigma}") } else { String::new() };
    format!("{} regime (h={}, H={}{extra})", regime.tag, p.min, p.max)
}

/// Formats reduced-matrix columns under their input numbers.
fn fmt_set(s: &BTreeSet<usize>, kept: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|&c| kept[c - 1].to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// One line per weight class of `m` with its intersection structure;
/// columns are printed as `kept[c - 1]`.
fn describe_classes(m: &Matrix, kept: &[usize], label: &str) -> Result<(Vec<String>, serde_json::Value), CliError> {
    let p = distance_profile(m)?;
    let analysis = analyze_weight_classes(m)?;
    let mut lines = vec![format!("{label} profile: h={}, H={}", p.min, p.max)];
    match analysis.threshold_c {
        Some(c) => lines.push(format!("{label} size threshold for sunflowers: {c}")),
        None => lines.push(format!("{label} profile outside the polynomial regimes")),
    }
    let mut classes = Vec::new();
    for (&w, rows) in &analysis.classes {
        let family = analysis.system(w).expect("class present");
        let large = analysis.threshold_c.is_some_and(|c| rows.len() >= c);
        let structure = if family.len() < 2 {
            "single row".to_string()
        } else if let Some(f) = sunflower_core(family)? {
            let petals: Vec<String> = f.petals().iter().map(|p| fmt_set(p, kept)).collect();
            format!("sunflower, core {}, petals {}", fmt_set(f.core(), kept), petals.join(" "))
        } else if let Some(lambda) = weak_delta_lambda(family)? {
            format!("weak Δ-system with intersections of size {lambda}, not a sunflower")
        } else {
            "intersections of varying size".to_string()
        };
        let size = if large { "large" } else { "small" };
        lines.push(format!("  weight {w}: {} rows ({size}) {:?}: {structure}", rows.len(), rows));
        classes.push(json!({ "weight": w, "rows": rows, "large": large, "structure": structure }));
    }
    let details = json!({
        "profile": p,
        "threshold_c": analysis.threshold_c,
        "null_row": analysis.null_row,
        "classes": classes,
    });
    Ok((lines, details))
}

/// Weight classes of the input (when it has a null row) and of the reduced
/// matrix the homogeneous solver works on.
fn explain(m: &Matrix) -> Result<(Vec<String>, serde_json::Value), CliError> {
    let mut lines = Vec::new();
    let mut details = json!({});
    let identity: Vec<usize> = (1..=m.d()).collect();
    if m.rows().iter().any(|r| r.iter().all(|&s| s == 0)) {
        let (l, d) = describe_classes(m, &identity, "input")?;
        lines.extend(l);
        details["input"] = d;
    }
    let reduced = reduce_binary(m)?;
    let r = &reduced.matrix;
    lines.push(format!(
        "reduced matrix: {}x{} ({} columns complemented, {} duplicate and {} inessential columns removed; input column numbers)",
        r.n(),
        r.d(),
        reduced.complemented,
        reduced.duplicates_removed,
        reduced.inessential_removed
    ));
    details["reduced_rows"] = json!(r.n());
    details["reduced_columns"] = json!(r.d());
    if r.n() >= 2 {
        let (l, d) = describe_classes(r, &reduced.kept, "reduced")?;
        lines.extend(l);
        details["reduced"] = d;
    }
    Ok((lines, details))
}

pub fn classify_cmd(input: Option<Input>, args: &ClassifyArgs) -> Result<Report, CliError> {
    let m = matrix(input)?;
    let p = profile_of(&m)?.ok_or_else(|| usage("classification needs at least two rows"))?;
    let sigma = m.sigma_size();
    let regime = classify(p, sigma);
    let mut text = regime_line(&regime, p, sigma);
    let mut details = json!({ "sigma": sigma });
    if args.explain {
        text.push_str(&format!("\nrule: {}", regime.reason));
        if m.sigma_size() <= 2 {
            let (lines, structure) = explain(&m)?;
            for l in lines {
                text.push('\n');
                text.push_str(&l);
            }
            details["structure"] = structure;
        }
    }
    let mut report = Report::new(Verdict::Yes, "ok", text);
    report.profile = Some(p);
    report.regime = Some(regime);
    report.details = details;
    Ok(report)
}

fn rule_name(r: Rule) -> &'static str {
    match r {
        Rule::Preprocess => "preprocess",
        Rule::Inessential => "inessential",
        Rule::Dominance => "dominance",
    }
}

/// Returns the report and the per-rule lines for standard error.
pub fn reduce(input: Option<Input>, args: &ReduceArgs) -> Result<(Report, Vec<String>), CliError> {
    let mut m = matrix(input)?;
    let mut kept: Vec<usize> = (1..=m.d()).collect();
    let mut steps = Vec::new();
    let mut lines = Vec::new();
    for &rule in &args.rules {
        let (next, rep): (Matrix, RuleReport) = match rule {
            Rule::Preprocess => preprocess_binary(&m)?,
            Rule::Inessential => apply_rule_inessential(&m)?,
            Rule::Dominance => dominance_reduce(&m),
        };
        let deleted: Vec<usize> = rep.deleted.iter().map(|&c| kept[c - 1]).collect();
        let complemented: Vec<usize> = rep.complemented.iter().map(|&c| kept[c - 1]).collect();
        kept = rep.kept.iter().map(|&c| kept[c - 1]).collect();
        lines.push(format!(
            "{}: deleted {} column(s){}",
            rule_name(rule),
            deleted.len(),
            if complemented.is_empty() { String::new() } else { format!(", complemented {}", complemented.len()) }
        ));
        steps.push(json!({ "rule": rule_name(rule), "deleted": deleted, "complemented": complemented }));
        m = next;
    }
    let text = write_or_return(args.output.as_ref(), io::format_matrix(&m))?;
    let mut report = Report::new(Verdict::Yes, "ok", text);
    report.profile = profile_of(&m)?;
    report.details = json!({
        "rows": m.n(),
        "columns": m.d(),
        "kept": kept,
        "rules": steps,
        "matrix": if args.output.is_none() { Some(io::format_matrix(&m)) } else { None },
    });
    Ok((report, lines))
}

pub fn kernel(input: Option<Input>, args: &KernelArgs) -> Result<(Report, Vec<String>), CliError> {
    let inst = instance(input, args.k)?;
    if args.emit_hs && args.param != KernelParam::HK {
        return Err(usage("--emit-hs applies to --param h-k only"));
    }
    let mut lines = Vec::new();
    let (kernel, details) = match args.param {
        KernelParam::SigmaK => {
            let k = kernelize_sigma_k(&inst);
            let details = json!({ "param": "sigma-k", "sigma": inst.matrix.sigma_size() });
            (k, details)
        }
        KernelParam::HK => {
            let hk = kernelize_h_k(&inst)?;
            lines.push(format!(
                "hitting set kernel: {} sets over {} elements, bound g(H={}, k={}) = {}{}",
                hk.sets,
                hk.universe,
                hk.h,
                inst.k(),
                hk.bound,
                if hk.within_bound { "" } else { " (exceeded)" }
            ));
            let details = json!({
                "param": "h-k",
                "h": hk.h,
                "bound": hk.bound.to_string(),
                "within_bound": hk.within_bound,
                "sets": hk.sets,
                "universe": hk.universe,
                "columns": hk.columns,
            });
            if args.emit_hs {
                let hs = hs_kernelize(&dv_to_hitting_set(&inst));
                return Ok(match hs.instance {
                    None => (Report::new(Verdict::No, "no", "no: the instance has no solution"), lines),
                    Some(h) => {
                        let text = write_or_return(args.output.as_ref(), io::format_hitting_set(&h))?;
                        let mut r = Report::new(Verdict::Yes, "yes", text);
                        r.details = details;
                        (r, lines)
                    }
                });
            }
            (hk.kernel, details)
        }
    };
    let mut report = match kernel {
        Kernel::DefiniteNo => Report::new(Verdict::No, "no", "no: the instance has no solution"),
        Kernel::Reduced(out) => {
            lines.push(format!("kernel: {}x{} with k = {}", out.matrix.n(), out.matrix.d(), out.k()));
            let text = write_or_return(args.output.as_ref(), io::format_matrix(&out.matrix))?;
            let mut r = Report::new(Verdict::Yes, "yes", text);
            r.profile = profile_of(&out.matrix)?;
            r
        }
    };
    report.details = details;
    Ok((report, lines))
}

pub fn approx(input: Option<Input>) -> Result<(Report, Vec<String>), CliError> {
    let m = matrix(input)?;
    let p = profile_of(&m)?;
    let d = m.d();
    let sol = greedy_factor_h(&Instance::new(m, d));
    let big_h = p.map_or(0, |p| p.max);
    let line = format!("greedy size {}, at most H = {big_h} times the minimum", sol.len());
    let mut report = Report::new(Verdict::Yes, "ok", sol.to_string());
    report.solution = Some(sol);
    report.profile = p;
    report.details = json!({ "guarantee_factor": big_h });
    Ok((report, vec![line]))
}

pub fn verify(input: Option<Input>, args: &VerifyArgs) -> Result<Report, CliError> {
    let m = matrix(input)?;
    let sol = Solution::new(args.columns.iter().copied())?;
    let grid = restrict(&m, &sol)?;
    let mut seen: HashMap<&[u32], usize> = HashMap::new();
    let collision = grid.rows().enumerate().find_map(|(i, r)| seen.insert(r, i + 1).map(|j| (j, i + 1)));
    let over = args.k.filter(|&k| sol.len() > k);
    let (verdict, text) = match (collision, over) {
        (Some((i, j)), _) => (Verdict::No, format!("invalid: rows {i} and {j} agree on columns {sol}")),
        (None, Some(k)) => (Verdict::No, format!("invalid: {} columns exceed k = {k}", sol.len())),
        (None, None) => (Verdict::Yes, format!("valid: columns {sol} keep all {} rows distinct", m.n())),
    };
    let mut report = Report::new(verdict, if verdict == Verdict::Yes { "yes" } else { "no" }, text);
    report.details = json!({ "collision": collision, "size": sol.len() });
    report.solution = Some(sol);
    Ok(report)
}

struct Generated {
    matrix: Matrix,
    claimed: DistanceProfile,
    budget: Option<usize>,
    params: serde_json::Value,
}

fn need_k(args: &GenerateArgs) -> Result<usize, CliError> {
    args.k.ok_or_else(|| usage("--k is required for this kind"))
}

fn generate_kind(input: Option<Input>, args: &GenerateArgs, seed: u64) -> Result<Option<Generated>, CliError> {
    let generated = match args.kind {
        Kind::D3is => {
            let g = match input {
                Some(Input::Graph(g)) => g,
                Some(_) => unreachable!("graph input requested"),
                None => {
                    let n = args.vertices.ok_or_else(|| usage("d3is needs --input GRAPH or --vertices N"))?;
                    Graph::random(n, args.edge_prob, seed)
                }
            };
            let target = match args.target {
                Some(t) => t,
                None => generators::max_distance3_independent_set(&g)?.len(),
            };
            let inst = generators::from_graph_d3is(&g, target)?;
            Generated {
                budget: Some(inst.k()),
                matrix: inst.matrix,
                claimed: DistanceProfile { min: 2, max: 4 },
                params: json!({ "vertices": g.vertex_count(), "edges": g.edges(), "target": target }),
            }
        }
        Kind::Pad1 | Kind::Pad2 => {
            let m = matrix(input)?;
            let inst = Instance::new(m, need_k(args)?);
            let (out, claimed) = if args.kind == Kind::Pad1 {
                (generators::pad_case1(&inst, args.b)?, DistanceProfile { min: 1, max: 4 + args.b })
            } else {
                let (a, b) = (args.a, args.b);
                (generators::pad_case2(&inst, a, b)?, DistanceProfile { min: 2 + a, max: 4 + 2 * a.div_ceil(2) + b })
            };
            Generated {
                budget: Some(out.k()),
                matrix: out.matrix,
                claimed,
                params: json!({ "a": args.a, "b": args.b, "seed_budget": inst.k() }),
            }
        }
        Kind::Sunflower => {
            if args.petals.is_empty() {
                return Err(usage("sunflower needs --petals"));
            }
            let m = generators::gen_sunflower(&args.petals, args.core, seed)?;
            let c = args.core;
            let p = &args.petals;
            // distances: null row to petal i is c + p_i, petals i and j differ in p_i + p_j
            let mut dists: Vec<usize> = p.iter().map(|&x| c + x).collect();
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    dists.push(p[i] + p[j]);
                }
            }
            Generated {
                budget: Some(args.k.unwrap_or(p.len())),
                matrix: m,
                claimed: DistanceProfile {
                    min: *dists.iter().min().expect("at least one petal"),
                    max: *dists.iter().max().expect("at least one petal"),
                },
                params: json!({ "petals": p, "core": c }),
            }
        }
        Kind::Random => {
            let field = |v: Option<usize>, name: &str| v.ok_or_else(|| usage(format!("random needs --{name}")));
            let (n, d) = (field(args.rows, "rows")?, field(args.cols, "cols")?);
            let (alpha, beta) = (field(args.alpha, "alpha")?, field(args.beta, "beta")?);
            let Some(m) = generators::gen_random_profile(n, d, alpha, beta, seed, args.attempts)? else {
                return Ok(None);
            };
            Generated {
                budget: args.k,
                matrix: m,
                claimed: DistanceProfile { min: alpha, max: beta },
                params: json!({ "rows": n, "cols": d, "attempts": args.attempts }),
            }
        }
    };
    Ok(Some(generated))
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::D3is => "d3is",
        Kind::Pad1 => "pad1",
        Kind::Pad2 => "pad2",
        Kind::Sunflower => "sunflower",
        Kind::Random => "random",
    }
}

pub fn generate(input: Option<Input>, args: &GenerateArgs, seed: u64) -> Result<Report, CliError> {
    let Some(g) = generate_kind(input, args, seed)? else {
        return Ok(Report::new(
            Verdict::No,
            "no",
            format!("no matrix with the requested profile within {} attempts; try another seed", args.attempts),
        ));
    };
    let actual = profile_of(&g.matrix)?;
    if actual != Some(g.claimed) {
        return Err(CliError::Core(DvError::Structure(format!(
            "generated profile {actual:?} differs from the claimed {}",
            g.claimed
        ))));
    }
    let sidecar = args.output.with_extension("json");
    let meta = json!({
        "seed": seed,
        "kind": kind_name(args.kind),
        "claimed_profile": g.claimed,
        "budget": g.budget,
        "rng": RNG_ALGORITHM,
        "rows": g.matrix.n(),
        "columns": g.matrix.d(),
        "params": g.params,
    });
    let write = |p: &Path, s: String| fs::write(p, s).map_err(|e| usage(format!("cannot write {}: {e}", p.display())));
    write(&args.output, io::format_matrix(&g.matrix))?;
    write(&sidecar, serde_json::to_string_pretty(&meta).expect("plain JSON") + "\n")?;
    let text = format!(
        "wrote {} ({}x{}, {}{}) and {}",
        args.output.display(),
        g.matrix.n(),
        g.matrix.d(),
        g.claimed,
        g.budget.map_or(String::new(), |k| format!(", budget {k}")),
        sidecar.display()
    );
    let mut report = Report::new(Verdict::Yes, "ok", text);
    report.profile = Some(g.claimed);
    report.regime = Some(classify(g.claimed, g.matrix.sigma_size()));
    report.details = meta;
    Ok(report)
}
