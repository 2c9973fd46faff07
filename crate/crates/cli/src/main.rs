use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use catembed_core::companion::{order3_candidates, Catalog};
use catembed_core::compilers::{
    compile_e, compile_qft, cost_model, egate_embedding, qft_matrix, CompiledProgram, CostKind, CostReport,
    EGATE_CATALOG_ID,
};
use catembed_core::embed::{classify, lift_circuit, Bundle, Candidate, GateSetEmbedding, PreEmbedding};
use catembed_core::numring::{parse_decimal, parse_element, GaloisAutomorphism};
use catembed_core::sim::{
    check_catalytic_action, check_galois_action, conjugate_catalysts, standard_probes, ActionReport, ExactState,
};
use catembed_core::{Circuit, ExactMatrix, Gate, GateSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(name = "catembed", version, about = "Catalytic embeddings of quantum circuits, in exact arithmetic")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Catalog file; defaults to $CATEMBED_CATALOG, then the shipped catalog.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Re-verify every catalog entry.
    VerifyCatalog,
    /// Apply an embedding to a matrix or lift a circuit.
    Embed {
        /// Catalog entry id.
        #[arg(long, conflicts_with = "bundle")]
        entry: Option<String>,
        /// Embedding bundle file ({tower, lambda}).
        #[arg(long)]
        bundle: Option<PathBuf>,
        /// Matrix as a file or inline JSON: rows of expressions such as "sqrt(5)", or the serialized form.
        #[arg(long, conflicts_with = "circuit")]
        matrix: Option<String>,
        /// Circuit as a file or inline text (S-expression or JSON).
        #[arg(long)]
        circuit: Option<String>,
        /// Source gate set for --circuit.
        #[arg(long)]
        gate_set: Option<String>,
    },
    /// Compile the n-qubit QFT with catalytic decrementers.
    Qft {
        n: u32,
        #[arg(long)]
        inverse: bool,
        /// Rewrite decrementers on at most three bits over {X, CX, CCX}.
        #[arg(long)]
        expand: bool,
        #[arg(long)]
        simulate: bool,
        /// Print OpenQASM instead of the report.
        #[arg(long)]
        qasm: bool,
    },
    /// Compile the order-3 phase gate over Clifford+T.
    Egate {
        #[arg(long)]
        simulate: bool,
        #[arg(long)]
        qasm: bool,
    },
    /// Compare T-counts against repeated approximation.
    Cost {
        #[arg(value_parser = parse_kind)]
        kind: CostKind,
        /// Number of gates (egate).
        #[arg(long, conflicts_with = "n")]
        m: Option<u64>,
        /// Number of qubits (qft).
        #[arg(long)]
        n: Option<u64>,
        /// Target precision as a decimal or fraction, e.g. 1e-15.
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        csv: bool,
    },
    /// Strongness and linearity tests on a candidate embedding.
    Classify {
        /// Built-in candidate: embedding-1, embedding-2 or embedding-3.
        #[arg(long, conflicts_with = "bundle")]
        candidate: Option<String>,
        /// Candidate file ({name, projector, gates}).
        #[arg(long)]
        bundle: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
        /// Print the candidate as JSON and stop.
        #[arg(long)]
        emit_bundle: bool,
        /// Exit nonzero unless the verdict matches.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Check the catalytic (or twisted) action of a compiled program.
    Simulate {
        /// Compiled program JSON, as printed by `qft` or `egate` with --format json.
        #[arg(long)]
        program: PathBuf,
        /// Source operation: egate, qft:N, iqft:N, or a matrix file.
        #[arg(long)]
        source: String,
        /// JSON list of probe vectors; defaults to the basis plus one superposition.
        #[arg(long)]
        probes: Option<PathBuf>,
        /// Check the action twisted by zeta -> zeta^K on the catalysts' conductor.
        #[arg(long, allow_negative_numbers = true)]
        galois: Option<i64>,
    },
}

fn parse_kind(s: &str) -> std::result::Result<CostKind, String> {
    s.parse().map_err(|e: catembed_core::Error| e.to_string())
}

struct Out {
    ok: bool,
    json: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).unwrap()),
                Format::Text => print!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load_catalog(cli: &Cli) -> Result<Catalog> {
    Ok(match &cli.catalog {
        Some(p) => Catalog::load(p)?,
        None => Catalog::from_env()?,
    })
}

/// Inline JSON/text when it looks like one, otherwise a file path.
fn read_arg(s: &str) -> Result<String> {
    let t = s.trim_start();
    if t.starts_with('[') || t.starts_with('{') || t.starts_with('(') {
        return Ok(s.to_string());
    }
    std::fs::read_to_string(s).with_context(|| format!("reading {s}"))
}

fn read_json(p: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))
}

fn matrix_text(m: &ExactMatrix) -> String {
    let mut s = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
        s.push_str(&format!("  [{}]\n", row.join(", ")));
    }
    s
}

fn run(cli: &Cli) -> Result<Out> {
    match &cli.cmd {
        Cmd::VerifyCatalog => verify_catalog(cli),
        Cmd::Embed { entry, bundle, matrix, circuit, gate_set } => {
            embed(cli, entry.as_deref(), bundle.as_deref(), matrix.as_deref(), circuit.as_deref(), gate_set.as_deref())
        }
        Cmd::Qft { n, inverse, expand, simulate, qasm } => {
            let p = compile_qft(*n, *inverse, *expand)?;
            let f = qft_matrix(*n)?;
            let source = if *inverse { f.dagger() } else { f };
            compiled(p, &source, *simulate, *qasm)
        }
        Cmd::Egate { simulate, qasm } => {
            let p = compile_e(&load_catalog(cli)?)?;
            let e = Gate::from_matrix("E", catembed_core::circuit::std_matrix("E").unwrap())?.evaluation();
            compiled(p, &e, *simulate, *qasm)
        }
        Cmd::Cost { kind, m, n, epsilon, csv } => {
            let size = m.or(*n).context("give the instance size with --m (egate) or --n (qft)")?;
            let eps = parse_decimal(epsilon)?;
            let r = cost_model(*kind, size, &eps)?;
            Ok(cost_out(&r, *csv))
        }
        Cmd::Classify { candidate, bundle, max_len, emit_bundle, expect } => {
            let cand: Candidate = match (candidate, bundle) {
                (Some(name), _) => order3_candidates()
                    .into_iter()
                    .find(|c| &c.name == name)
                    .with_context(|| format!("unknown candidate `{name}`"))?,
                (None, Some(p)) => serde_json::from_value(read_json(p)?)?,
                (None, None) => bail!("give --candidate or --bundle"),
            };
            if *emit_bundle {
                let v = serde_json::to_value(&cand)?;
                return Ok(Out { ok: true, text: format!("{}\n", serde_json::to_string(&v)?), json: v });
            }
            let r = classify(&cand, *max_len)?;
            let ok = expect.as_ref().map_or(true, |e| *e == r.verdict.to_string());
            let mut text = format!("candidate: {}\nverdict: {}\n", r.candidate, r.verdict);
            if let Some(w) = &r.witness {
                text.push_str(&format!("witness: {}\n", serde_json::to_string(w)?));
            }
            text.push_str(&format!(
                "words checked: {} (length <= {}), distinct evaluations: {}, violations: {}\n",
                r.words_checked,
                r.max_word_len,
                r.distinct_evaluations,
                r.violations.len()
            ));
            Ok(Out { ok, json: serde_json::to_value(&r)?, text })
        }
        Cmd::Simulate { program, source, probes, galois } => simulate(program, source, probes.as_deref(), *galois),
    }
}

fn verify_catalog(cli: &Cli) -> Result<Out> {
    let catalog = load_catalog(cli)?;
    let mut ok = true;
    let mut rows = Vec::new();
    let mut text = String::new();
    if catalog.entries.is_empty() {
        eprintln!("warning: catalog is empty");
    }
    for e in &catalog.entries {
        let result = e.verify().and_then(|pe| Ok((pe.dim(), pe.degree(), e.probe_laws(&pe)?)));
        match result {
            Ok((k, d, laws)) => {
                let failed: Vec<&String> = laws.iter().filter(|(_, b)| !b).map(|(n, _)| n).collect();
                let pass = failed.is_empty();
                ok &= pass;
                if pass {
                    text.push_str(&format!("PASS {} (k={k}, degree {d}, {} laws)\n", e.id, laws.len()));
                } else {
                    text.push_str(&format!("FAIL {}: {}\n", e.id, failed.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", ")));
                }
                rows.push(json!({"id": e.id, "pass": pass, "k": k, "degree": d, "failed": failed}));
            }
            Err(err) => {
                ok = false;
                text.push_str(&format!("FAIL {}: {err}\n", e.id));
                rows.push(json!({"id": e.id, "pass": false, "error": err.to_string()}));
            }
        }
    }
    Ok(Out { ok, json: json!({"entries": rows, "pass": ok}), text })
}

fn embedding(cli: &Cli, entry: Option<&str>, bundle: Option<&Path>) -> Result<(String, PreEmbedding)> {
    match (entry, bundle) {
        (Some(id), _) => Ok((id.to_string(), load_catalog(cli)?.get(id)?.verify()?)),
        (None, Some(p)) => {
            let b: Bundle = serde_json::from_value(read_json(p)?)?;
            Ok((p.display().to_string(), b.pre_embedding()?))
        }
        (None, None) => bail!("give --entry or --bundle"),
    }
}

fn embed(
    cli: &Cli,
    entry: Option<&str>,
    bundle: Option<&Path>,
    matrix: Option<&str>,
    circuit: Option<&str>,
    gate_set: Option<&str>,
) -> Result<Out> {
    let (name, pe) = embedding(cli, entry, bundle)?;
    let bundle_json = serde_json::to_value(Bundle::from_pre_embedding(&pe))?;
    if let Some(m) = matrix {
        let v: Value = serde_json::from_str(&read_arg(m)?).context("matrix is not JSON")?;
        let m = ExactMatrix::from_json_value(&v)?;
        let phi = pe.phi(&m)?;
        let (right, left) = pe.catalytic_sides(&m)?;
        let text = format!(
            "embedding: {name}\nphi:\n{}catalytic: {right}\nleft-sided: {left}\n",
            matrix_text(&phi)
        );
        let json = json!({
            "embedding": name,
            "input": m,
            "phi": phi,
            "bundle": bundle_json,
            "checks": {"catalytic": right, "left_sided": left},
        });
        return Ok(Out { ok: right && left, json, text });
    }
    let Some(c) = circuit else { bail!("give --matrix or --circuit") };
    let egate = entry == Some(EGATE_CATALOG_ID);
    let gs_name = gate_set.map(str::to_string).or_else(|| egate.then(|| "clifford_t_e".to_string()));
    let source = GateSet::by_name(gs_name.as_deref().context("give --gate-set for circuit mode")?)?;
    let circ = Circuit::parse_any(&read_arg(c)?, &source)?;
    let gse = if egate && source.name == "clifford_t_e" {
        egate_embedding(&load_catalog(cli)?)?.1
    } else {
        matrix_gates(&pe, &source)?
    };
    let lifted = lift_circuit(&gse, &circ)?;
    let m = lifted.evaluate(&gse.target)?;
    let ip = ExactMatrix::identity(circ.dim()).tensor(&pe.projector);
    let ok = m.mul(&ip)? == circ.evaluate(&source)?.tensor(&pe.projector);
    let text = format!("embedding: {name}\nlifted: {lifted}\ncatalytic: {ok}\n");
    let json = json!({
        "embedding": name,
        "source_gate_set": source.name,
        "target_gate_set": gse.target.name,
        "lifted": lifted.to_json(),
        "t_count": lifted.t_count(),
        "bundle": bundle_json,
        "checks": {"catalytic": ok},
    });
    Ok(Out { ok, json, text })
}

/// One target gate phi_G = Φ(e(G)) per source gate.
fn matrix_gates(pe: &PreEmbedding, source: &GateSet) -> Result<GateSetEmbedding> {
    let mut target = GateSet::new(format!("phi({})", source.name));
    let mut templates = std::collections::BTreeMap::new();
    for g in source.gates() {
        let name = format!("phi_{}", g.name);
        target.insert(Gate::from_matrix(name.clone(), pe.phi(&g.evaluation())?)?)?;
        templates.insert(g.name.clone(), Circuit::gate_ref(name, g.dim * pe.dim()));
    }
    Ok(GateSetEmbedding::from_pre_embedding(pe, source.clone(), target, templates)?)
}

fn action_text(r: &ActionReport) -> String {
    let passed = r.probes.iter().filter(|p| p.pass).count();
    let mut s = format!("simulation ({}): {passed}/{} probes pass\n", r.law, r.probes.len());
    if let Some(c) = r.catalysts_conjugate {
        s.push_str(&format!("catalysts are conjugates: {c}\n"));
    }
    s
}

fn compiled(p: CompiledProgram, source: &ExactMatrix, simulate: bool, qasm: bool) -> Result<Out> {
    let report = if simulate {
        Some(check_catalytic_action(&p, source, &standard_probes(p.data_wires.len())?)?)
    } else {
        None
    };
    let ok = report.as_ref().map_or(true, |r| r.all_pass());
    let mut json = p.to_json();
    if let Some(r) = &report {
        json["simulation"] = serde_json::to_value(r)?;
    }
    let text = if qasm {
        p.to_qasm()?
    } else {
        let mut s = format!("source: {}\ngate set: {}\nqubits: {}\n", p.source_description, p.gate_set.name, p.program.qubits);
        for c in &p.catalysts {
            match &c.vector {
                Some(v) => {
                    let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    s.push_str(&format!("catalyst {} on {:?}: [{}]\n", c.label, c.wires, v.join(", ")));
                }
                None => s.push_str(&format!("borrowed {} on {:?}\n", c.label, c.wires)),
            }
        }
        let counts: Vec<String> = p.program.gate_counts().iter().map(|(g, n)| format!("{g}:{n}")).collect();
        s.push_str(&format!("gates: {}\nT-count: {}\n", counts.join(" "), p.t_count));
        if let Some(t) = p.t_count_optimized {
            s.push_str(&format!("T-count (optimized): {t}\n"));
        }
        for op in &p.program.ops {
            s.push_str(&format!("  {} {:?}\n", op.gate, op.wires));
        }
        if let Some(r) = &report {
            s.push_str(&action_text(r));
        }
        s
    };
    Ok(Out { ok, json, text })
}

fn cost_out(r: &CostReport, csv: bool) -> Out {
    let text = if csv { format!("{}\n{}\n", CostReport::csv_header(), r.to_csv_row()) } else { r.to_string() };
    Out { ok: true, json: r.to_json(), text }
}

fn simulate(program: &Path, source: &str, probes: Option<&Path>, galois: Option<i64>) -> Result<Out> {
    let p = CompiledProgram::from_json(&read_json(program)?)?;
    let m = match source.split_once(':') {
        _ if source == "egate" => catembed_core::circuit::std_matrix("E").unwrap(),
        Some(("qft", n)) => qft_matrix(n.parse()?)?,
        Some(("iqft", n)) => qft_matrix(n.parse()?)?.dagger(),
        _ => ExactMatrix::from_json_value(&serde_json::from_str(&read_arg(source)?)?)?,
    };
    let probes = match probes {
        Some(path) => {
            let v = read_json(path)?;
            let list = v.as_array().context("probes must be a JSON list")?;
            list.iter()
                .map(|row| {
                    let amps = row
                        .as_array()
                        .context("each probe is a list of amplitudes")?
                        .iter()
                        .map(|x| match x {
                            Value::String(s) => Ok(parse_element(s)?),
                            other => Ok(parse_element(&other.to_string())?),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(ExactState::new(amps)?)
                })
                .collect::<Result<Vec<_>>>()?
        }
        None => standard_probes(p.data_wires.len())?,
    };
    let report = match galois {
        None => check_catalytic_action(&p, &m, &probes)?,
        Some(k) => {
            let cond = p
                .catalysts
                .iter()
                .filter_map(|c| c.vector.as_ref())
                .flatten()
                .map(|x| x.conductor())
                .fold(m.conductor(), num_lcm);
            let g = GaloisAutomorphism::new(cond, k)?;
            let conj = conjugate_catalysts(&p, &g)?;
            check_galois_action(&p, &g, &conj, &m, &probes)?
        }
    };
    let ok = report.all_pass();
    Ok(Out { ok, json: serde_json::to_value(&report)?, text: action_text(&report) })
}

fn num_lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}
