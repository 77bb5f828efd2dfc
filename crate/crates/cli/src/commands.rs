use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use layered_wheels::axioms::{validate_axioms, AxiomParams, Condition, LayeredWheel, View};
use layered_wheels::bbp::{bounded_branch_search, verify_embedding};
use layered_wheels::chordal::{chordal_complete, tree_representation, validate_representation};
use layered_wheels::decomposer::{decompose, select_hfree_layers, BalanceRule, DecomposeOptions};
use layered_wheels::gen::{girth5_layered_wheel, greedy_hfree_subset};
use layered_wheels::graph::{named, Graph, Label};
use layered_wheels::io::{graph_from_text, to_dimacs, to_graph6, trigraph_from_json, trigraph_to_json};
use layered_wheels::oracles::{
    bramble_order, check_bramble, exact_treewidth, girth, layer_bramble, max_clique, verify_tree_decomposition,
};
use layered_wheels::td::{Bramble, TdFile, TreeDecomposition};
use layered_wheels::twinwidth::{step_records, wheel_contraction_sequence};
use layered_wheels::wheel::{child_bound, wheel_to_dot, Variant, WheelFile, WheelPrefix};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Balance, Cli, Command, Format, Oracle, Report};

pub enum Failure {
    /// A check failed; its witness has been written.
    Check,
    Usage(String),
}

type Outcome = Result<(), Failure>;

impl From<layered_wheels::Error> for Failure {
    fn from(e: layered_wheels::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(msg.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Pretty JSON with object keys sorted.
fn to_json<T: Serialize>(value: &T) -> String {
    let v: Value = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn write_out(out: Option<&PathBuf>, text: &str) -> Outcome {
    match out {
        Some(p) if p.as_os_str() != "-" => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        _ => std::io::stdout().write_all(text.as_bytes()).map_err(|e| usage(e.to_string())),
    }
}

fn load_prefix(path: &Path) -> Result<WheelPrefix, Failure> {
    Ok(WheelPrefix::from_file(&read_json::<WheelFile>(path)?)?)
}

/// A graph file (JSON trigraph or graph6), or the real graph of a wheel file.
fn load_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read(path)?;
    if let Ok(f) = serde_json::from_str::<WheelFile>(&text) {
        return Ok(LayeredWheel::from_wheel_file(&f, View::Real)?.graph().clone());
    }
    Ok(graph_from_text(&text)?)
}

fn load_subset(path: &Path) -> Result<Vec<Label>, Failure> {
    let mut x: Vec<Label> = read_json(path)?;
    x.sort_unstable();
    Ok(x)
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Gen { t, depth, triangle_free, cap, format, out } => {
            let variant = if *triangle_free { Variant::TriangleFree } else { Variant::Standard };
            let w = WheelPrefix::build(*t, *depth, variant, *cap)?;
            let text = match format {
                Format::Json => to_json(&w.to_file()),
                Format::Graph6 => to_graph6(&w.real_graph()) + "\n",
                Format::Dimacs => to_dimacs(&w.real_graph()),
                Format::Dot => wheel_to_dot(&w),
                Format::Csv => edges_csv(&w)?,
            };
            write_out(out.as_ref(), &text)
        }
        Command::Validate { file, stroll_t, deg2_threshold, report, require, real } => {
            let f: WheelFile = read_json(file)?;
            let view = if *real { View::Real } else { View::Total };
            let lw = LayeredWheel::from_wheel_file(&f, view)?;
            let params = AxiomParams {
                stroll_t: *stroll_t,
                d: Some(child_bound(f.t, f.variant) - 1),
                upward_bound: Some(f.t + 1),
                degree2_threshold: *deg2_threshold,
                ..Default::default()
            };
            let mut required = Vec::new();
            for name in require {
                let c = Condition::ALL
                    .into_iter()
                    .find(|c| c.name() == name.trim())
                    .ok_or_else(|| usage(format!("unknown condition `{name}`")))?;
                required.push(c);
            }
            let r = validate_axioms(&lw, &params);
            let failed: Vec<&str> = required.iter().filter(|&&c| !r.verdict(c).holds()).map(|c| c.name()).collect();
            let text = match report {
                Report::Json => {
                    let mut v = serde_json::to_value(&r).expect("serializable");
                    v["failed"] = json!(failed);
                    to_json(&v)
                }
                Report::Text => {
                    let mut s = String::new();
                    for (c, v) in &r.conditions {
                        let state = if v.holds() { "holds" } else { "fails" };
                        let wit = v.witness().map(|w| format!(" witness {}", serde_json::to_string(w).unwrap()));
                        s += &format!("condition {:>3}: {state}{}\n", c.name(), wit.unwrap_or_default());
                    }
                    s += &format!(
                        "max |X_v| {:?}, max children {}, longest degree-2 run {}\n",
                        r.max_upward_restriction, r.max_children, r.max_degree2_run
                    );
                    s
                }
            };
            write_out(None, &text)?;
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Rep { input, out } => {
            let h = trigraph_from_json(&read(input)?)?;
            let rep = tree_representation(&h)?;
            let verdict = validate_representation(&rep);
            if !verdict.holds() {
                return Err(usage(format!("internal: representation rejected: {verdict:?}")));
            }
            write_out(out.as_ref(), &to_json(&rep.to_file()))
        }
        Command::Complete { input, t, out } => {
            let g = graph_from_text(&read(input)?)?;
            let c = chordal_complete(&g, *t)?;
            write_out(out.as_ref(), &(trigraph_to_json(&c) + "\n"))
        }
        Command::Bbp { wheel, h, x, u } => {
            let w = load_prefix(wheel)?;
            let rep = tree_representation(&trigraph_from_json(&read(h)?)?)?;
            let x = load_subset(x)?;
            let result = bounded_branch_search(&w, &rep, &x, *u)?;
            verify_embedding(&w, &rep, &x, &result)?;
            write_out(None, &to_json(&result))
        }
        Command::Decompose { wheel, x, h, t, out, trace, balance, bbp_paths, trust_hfree, size } => {
            let w = load_prefix(wheel)?;
            let h = load_graph(h)?;
            let real = w.real_graph();
            let x = match x {
                Some(p) => load_subset(p)?,
                None => greedy_hfree_subset(&real, &h, *size, cli.global.seed)?,
            };
            let opts = DecomposeOptions {
                balance: match balance {
                    Balance::Bounded => BalanceRule::Bounded,
                    Balance::Unbounded => BalanceRule::Unbounded,
                },
                bounded_branch_paths: *bbp_paths,
                trust_hfree: *trust_hfree,
            };
            let tr = decompose(&w, &x, &h, *t, &opts)?;
            let verdict = verify_tree_decomposition(&real.induced_subgraph(&x)?, &tr.decomposition);
            if !verdict.is_valid() {
                write_out(None, &to_json(&verdict))?;
                return Err(Failure::Check);
            }
            if let Some(p) = trace {
                write_out(Some(p), &to_json(&tr))?;
            }
            let td = to_json(&tr.decomposition.to_json());
            match out {
                Some(p) => {
                    write_out(Some(p), &td)?;
                    let summary = json!({
                        "n": x.len(),
                        "subset": x,
                        "width": tr.width,
                        "separators": tr.root.certificates().len(),
                        "separator_bound": tr.separator_bound,
                        "constructive_bound": tr.constructive_bound,
                        "bounds": tr.bounds,
                    });
                    write_out(None, &to_json(&summary))
                }
                None => write_out(None, &td),
            }
        }
        Command::Twinwidth { wheel, per_step } => {
            let w = load_prefix(wheel)?;
            let s = wheel_contraction_sequence(&w);
            let records = step_records(&w.real_graph(), &s)?;
            if let Some(p) = per_step {
                let mut wr = csv::Writer::from_writer(Vec::new());
                for r in &records {
                    wr.serialize(r).map_err(usage)?;
                }
                let bytes = wr.into_inner().map_err(|e| usage(e.to_string()))?;
                write_out(Some(p), &String::from_utf8(bytes).expect("ascii"))?;
            }
            if per_step.as_ref().is_none_or(|p| p.as_os_str() != "-") {
                let max = |f: fn(&layered_wheels::twinwidth::StepRecord) -> usize| records.iter().map(f).max();
                let summary = json!({
                    "n": w.n(),
                    "t": w.t(),
                    "steps": records.len(),
                    "max_red_degree": max(|r| r.red_degree).unwrap_or(0),
                    "max_outdegree": max(|r| r.outdegree).unwrap_or(0),
                    "outdegree_bound": w.t() + 3,
                    "merges": s.merges,
                });
                write_out(None, &to_json(&summary))?;
            }
            Ok(())
        }
        Command::Oracle(o) => oracle(o),
        Command::LayersSelect { wheel, h, k } => {
            let lw = match wheel {
                Some(p) => LayeredWheel::from_wheel_file(&read_json(p)?, View::Real)?,
                None => girth5_layered_wheel(6, 2, 150, cli.global.seed)?,
            };
            let h = match h {
                Some(p) => load_graph(p)?,
                None => named::robertson(),
            };
            let layers = select_hfree_layers(&lw, &h, *k)?;
            let union: usize = layers.iter().map(|&i| lw.layers()[i].len()).sum();
            write_out(None, &to_json(&json!({ "layers": layers, "union_size": union, "pattern_size": h.n() })))
        }
    }
}

fn edges_csv(w: &WheelPrefix) -> Result<String, Failure> {
    let mut wr = csv::Writer::from_writer(Vec::new());
    wr.write_record(["u", "v", "colour"]).map_err(usage)?;
    let t = w.trigraph();
    for (colour, edges) in [("black", t.black_edges()), ("red", t.red_edges())] {
        for (a, b) in edges {
            wr.write_record([a.to_string(), b.to_string(), colour.to_string()]).map_err(usage)?;
        }
    }
    let bytes = wr.into_inner().map_err(|e| usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ascii"))
}

fn oracle(o: &Oracle) -> Outcome {
    match o {
        Oracle::Tw { graph } => {
            let g = load_graph(graph)?;
            let r = exact_treewidth(&g)?;
            let v = json!({ "treewidth": r.width, "order": r.order, "decomposition": r.decomposition.to_json() });
            write_out(None, &to_json(&v))
        }
        Oracle::Girth { graph } => write_out(None, &to_json(&json!({ "girth": girth(&load_graph(graph)?) }))),
        Oracle::Omega { graph } => {
            let c = max_clique(&load_graph(graph)?)?;
            write_out(None, &to_json(&json!({ "omega": c.len(), "clique": c })))
        }
        Oracle::CheckTd { graph, x, td } => {
            let mut g = load_graph(graph)?;
            if let Some(x) = x {
                g = g.induced_subgraph(&load_subset(x)?)?;
            }
            let td = TreeDecomposition::from_json(&read_json::<TdFile>(td)?);
            let verdict = verify_tree_decomposition(&g, &td);
            write_out(None, &to_json(&verdict))?;
            if verdict.is_valid() {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Oracle::Bramble { graph, layer, bramble } => {
            let (g, mut b) = match (layer, bramble) {
                (Some(i), None) => {
                    let w = load_prefix(graph)?;
                    let upto: Vec<Label> = (0..w.n()).filter(|&v| w.layer_of(v) <= *i).map(|v| v as Label).collect();
                    (w.real_graph().induced_subgraph(&upto)?, layer_bramble(&w, *i)?)
                }
                (None, Some(p)) => (load_graph(graph)?, read_json::<Bramble>(p)?),
                _ => return Err(usage("give exactly one of --layer and --bramble")),
            };
            if let Err(problem) = check_bramble(&g, &b) {
                write_out(None, &to_json(&problem))?;
                return Err(Failure::Check);
            }
            let order = bramble_order(&g, &mut b)?;
            let v = json!({ "order": order, "treewidth_at_least": order - 1, "bramble": b });
            write_out(None, &to_json(&v))
        }
    }
}
