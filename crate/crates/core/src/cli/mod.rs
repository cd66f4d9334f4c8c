// SPDX-License-Identifier: MIT OR Apache-2.0

//! Command-line front end. `run` parses argv, executes one subcommand and
//! returns the exit status together with what to print.

pub mod format;
pub mod repro;

use crate::ec::Curve;
use crate::endo::{PowersmoothBound, TracedEndo};
use crate::error::{Error, Result};
use crate::ff_poly::Fp2;
use crate::isogeny::{velu, Isogeny};
use crate::pathfind::{default_r_cap, orient_1728, path_to_1728, PathOptions, PathResult};
use crate::quat::realize_endo_1728;
use crate::walk::{ascend_to_rim, classify_directions, make_primitive, rim_cycle, suitable_translate, walk_rim, OrientedPath, StepKind};
use clap::{Parser, Subcommand};
use format::{fmt_fp2, fmt_poly, parse_curve, parse_fp2, parse_ratfunc, push_curve, push_ratfunc, Instance, Record};
use std::fmt::Write;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "ssorient", version, about = "Paths to j = 1728 in oriented supersingular isogeny graphs")]
pub struct Cli {
    /// Worker threads for the parallel searches.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Print a readable summary instead of key/value records.
    #[arg(long, global = true)]
    pub human: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(clap::Args, Debug)]
pub struct EndoArgs {
    /// Record with p and curve.a, curve.b.
    #[arg(long)]
    pub curve: PathBuf,
    /// Record with the endo.* keys; may be the same file as --curve.
    #[arg(long)]
    pub endo: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Path from E1728 to the given oriented curve.
    FindPath {
        #[command(flatten)]
        input: EndoArgs,
        /// Characteristic; must match the records if given
        #[arg(long)]
        p: Option<u64>,
        /// Isogeny degree ℓ
        #[arg(long, default_value_t = 2)]
        ell: u64,
        /// Largest r tried in the orientation search [default: 2·⌈log_ℓ p⌉ + 4]
        #[arg(long)]
        r_cap: Option<u32>,
        /// Powersmooth bound B [default: 200]
        #[arg(long = "B")]
        bound: Option<u128>,
        /// Also write the path as a DOT graph.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Orientations of E1728 by an ℓ-fundamental discriminant.
    #[command(name = "orient-1728")]
    Orient1728 {
        /// Characteristic, a prime ≡ 3 mod 4
        #[arg(long)]
        p: u64,
        /// Discriminant Δ < 0
        #[arg(long, allow_hyphen_values = true)]
        disc: i128,
        /// Isogeny degree ℓ
        #[arg(long, default_value_t = 2)]
        ell: u64,
        /// Number of solutions to print
        #[arg(long, default_value_t = 1)]
        max_solutions: usize,
        /// Largest r tried in the orientation search [default: 2·⌈log_ℓ p⌉ + 4]
        #[arg(long)]
        r_cap: Option<u32>,
    },
    /// The rim through a primitively oriented curve, or a rim path to --target-j.
    WalkRim {
        #[command(flatten)]
        input: EndoArgs,
        /// Isogeny degree ℓ
        #[arg(long, default_value_t = 2)]
        ell: u64,
        /// Stop at this j-invariant, written c0,c1
        #[arg(long)]
        target_j: Option<String>,
    },
    /// Ascend to the rim after making the endomorphism ℓ-primitive.
    Ascend {
        #[command(flatten)]
        input: EndoArgs,
        /// Isogeny degree ℓ
        #[arg(long, default_value_t = 2)]
        ell: u64,
        /// Powersmooth bound B [default: 200]
        #[arg(long = "B")]
        bound: Option<u128>,
    },
    /// Divide ([ℓ]φ)(x, y) = (F, G·y) by [ℓ].
    DivideByEll {
        /// Division problem record (p, ell, e1.*, f_*, g_*)
        #[arg(long)]
        instance: PathBuf,
    },
    /// Rewrite an endomorphism as a prime-power isogeny chain.
    Refactor {
        #[command(flatten)]
        input: EndoArgs,
    },
    /// Minimal B-powersmooth ℓ-suitable translate, as a chain.
    SuitableTranslate {
        #[command(flatten)]
        input: EndoArgs,
        /// Isogeny degree ℓ
        #[arg(long, default_value_t = 2)]
        ell: u64,
        /// Powersmooth bound B [default: 200]
        #[arg(long = "B")]
        bound: Option<u128>,
    },
    /// DOT drawing of the volcano through an orientation of E1728.
    ExploreVolcano {
        /// Characteristic, a prime ≡ 3 mod 4
        #[arg(long)]
        p: u64,
        /// Discriminant Δ < 0
        #[arg(long, allow_hyphen_values = true)]
        disc: i128,
        /// Isogeny degree ℓ
        #[arg(long, default_value_t = 2)]
        ell: u64,
        /// Levels drawn below the rim.
        #[arg(long, default_value_t = 1)]
        depth: u32,
        /// Write the DOT output here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the p = 179 running example and compare with the bundled golden files.
    ReproPaper,
}

/// Exit status and the text for stdout and stderr.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    if let Some(n) = cli.threads {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(&cli) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => {
            let code = if matches!(e, Error::Parse(_)) { 2 } else { 1 };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

fn read(path: &Path) -> Result<Record> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Record::parse(&text)
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Failure(format!("{}: {e}", path.display())))
}

fn load(args: &EndoArgs) -> Result<Instance> {
    let r = read(&args.curve)?;
    let r = if args.endo == args.curve { r } else { r.merge(&read(&args.endo)?)? };
    Instance::parse(&r)
}

fn bound_of(b: Option<u128>) -> Result<PowersmoothBound> {
    b.map(PowersmoothBound::new).transpose().map(|b| b.unwrap_or_default())
}

fn check_ell(ell: u64) -> Result<()> {
    if ell < 2 || !crate::arith::is_prime(ell as u128) {
        return Err(Error::Parse(format!("ell = {ell} is not prime")));
    }
    Ok(())
}

fn js_line(js: &[Fp2]) -> String {
    js.iter().map(fmt_fp2).collect::<Vec<_>>().join(" ")
}

fn js_human(js: &[Fp2]) -> String {
    js.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(" -> ")
}

fn kernel_poly(domain: &Curve, kernel: &crate::ec::Point) -> Result<String> {
    Ok(fmt_poly(&velu(domain, std::slice::from_ref(kernel))?.kernel_polynomial()))
}

pub fn path_record(path: &PathResult, p: u64) -> Result<Record> {
    let mut r = Record::new();
    r.push("p", p);
    r.push("ell", path.ell);
    r.push("length", path.len());
    r.push("j", js_line(&path.j_invariants()));
    for (k, e) in path.edges.iter().enumerate() {
        push_curve(&mut r, &format!("edge.{k}.domain"), &e.domain);
        r.push(&format!("edge.{k}.kernel_poly"), kernel_poly(&e.domain, &e.kernel)?);
        r.push(&format!("edge.{k}.codomain_j"), fmt_fp2(&e.codomain_j));
    }
    Ok(r)
}

fn oriented_path_record(r: &mut Record, path: &OrientedPath) -> Result<()> {
    r.push("length", path.len());
    r.push("j", js_line(&path.j_invariants()));
    for (k, s) in path.steps.iter().enumerate() {
        r.push(&format!("step.{k}.kernel_poly"), kernel_poly(&s.isogeny.domain, &s.kernel)?);
        r.push(&format!("step.{k}.t"), s.endo.t);
        r.push(&format!("step.{k}.n"), s.endo.n);
    }
    Ok(())
}

fn path_dot(path: &PathResult) -> String {
    let mut s = String::from("graph path {\n");
    for (k, j) in path.j_invariants().iter().enumerate() {
        writeln!(s, "  v{k} [label=\"{j}\"];").unwrap();
    }
    for k in 0..path.len() {
        writeln!(s, "  v{k} -- v{};", k + 1).unwrap();
    }
    s.push_str("}\n");
    s
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let human = cli.human;
    match &cli.cmd {
        Cmd::FindPath { input, p, ell, r_cap, bound, dot } => {
            check_ell(*ell)?;
            let inst = load(input)?;
            if p.is_some_and(|p| p != inst.p) {
                return Err(Error::Parse(format!("--p disagrees with the instance (p = {})", inst.p)));
            }
            let opts = PathOptions { bound: bound_of(*bound)?, r_cap: *r_cap };
            let path = path_to_1728(&inst.endo, *ell, opts)?;
            if let Some(d) = dot {
                write(d, &path_dot(&path))?;
            }
            if human {
                return Ok((0, format!("path of length {}: {}\n", path.len(), js_human(&path.j_invariants()))));
            }
            Ok((0, path_record(&path, inst.p)?.render()))
        }
        Cmd::Orient1728 { p, disc, ell, max_solutions, r_cap } => {
            check_ell(*ell)?;
            let cap = r_cap.unwrap_or_else(|| default_r_cap(*p, *ell));
            let mut r = Record::new();
            let mut text = String::new();
            let mut found = 0;
            for sol in orient_1728(*disc, *ell, *p, cap)?.take(*max_solutions) {
                let sol = sol?;
                r.push(&format!("solution.{found}.r"), sol.r);
                r.push(&format!("solution.{found}.quat"), sol.quat);
                r.push(&format!("solution.{found}.disc"), sol.disc);
                writeln!(text, "r = {}: θ = {} (disc {})", sol.r, sol.quat, sol.disc).unwrap();
                found += 1;
            }
            r.push("count", found);
            Ok((0, if human { text } else { r.render() }))
        }
        Cmd::WalkRim { input, ell, target_j } => {
            check_ell(*ell)?;
            let inst = load(input)?;
            let path = match target_j {
                Some(j) => {
                    let j = parse_fp2(j, inst.p)?;
                    walk_rim(&inst.endo, &Curve::from_j(j), *ell)?
                }
                None => rim_cycle(&inst.endo, *ell)?,
            };
            if human {
                return Ok((0, format!("rim path of length {}: {}\n", path.len(), js_human(&path.j_invariants()))));
            }
            let mut r = Record::new();
            oriented_path_record(&mut r, &path)?;
            Ok((0, r.render()))
        }
        Cmd::Ascend { input, ell, bound } => {
            check_ell(*ell)?;
            let inst = load(input)?;
            let b = bound_of(*bound)?;
            let (th, c) = make_primitive(&inst.endo, *ell, b)?;
            let path = ascend_to_rim(&th, *ell, b)?;
            if human {
                return Ok((0, format!("divided by {ell}^{c}; ascent of length {}: {}\n", path.len(), js_human(&path.j_invariants()))));
            }
            let mut r = Record::new();
            r.push("divisions", c);
            r.push("t", th.t);
            r.push("n", th.n);
            oriented_path_record(&mut r, &path)?;
            Ok((0, r.render()))
        }
        Cmd::DivideByEll { instance } => {
            let r = read(instance)?;
            let out = divide_record(&r)?;
            Ok((0, out.render()))
        }
        Cmd::Refactor { input } => {
            let inst = load(input)?;
            let th = inst.endo.refactor_chain()?;
            Ok((0, endo_output(&inst, &th, human)))
        }
        Cmd::SuitableTranslate { input, ell, bound } => {
            check_ell(*ell)?;
            let inst = load(input)?;
            let th = inst.endo.suitable_translate_powersmooth(*ell, bound_of(*bound)?)?;
            Ok((0, endo_output(&inst, &th, human)))
        }
        Cmd::ExploreVolcano { p, disc, ell, depth, out } => {
            check_ell(*ell)?;
            let dot = explore_volcano(*p, *disc, *ell, *depth)?;
            match out {
                Some(path) => {
                    write(path, &dot)?;
                    Ok((0, format!("wrote {}\n", path.display())))
                }
                None => Ok((0, dot)),
            }
        }
        Cmd::ReproPaper => {
            let report = repro::run_all();
            let code = if report.iter().all(|c| c.passed) { 0 } else { 1 };
            let mut s = String::new();
            for c in &report {
                writeln!(s, "{} {}{}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail).unwrap();
            }
            Ok((code, s))
        }
    }
}

fn endo_output(inst: &Instance, th: &TracedEndo, human: bool) -> String {
    if human {
        return format!("t = {}, n = {}, link degrees {:?}\n", th.t, th.n, th.link_degrees());
    }
    let out = Instance { p: inst.p, curve: th.curve, endo: th.clone() };
    out.to_record().render()
}

/// Division record: p, ell, e1.*, optional e2.*, F as f_*, G as g_*.
pub fn divide_record(r: &Record) -> Result<Record> {
    let p: u64 = r.int("p")?;
    let ell: u64 = r.int("ell")?;
    let e1 = parse_curve(r, "e1", p)?;
    let e2 = if r.get_opt("e2.a").is_some() { parse_curve(r, "e2", p)? } else { e1 };
    let f = parse_ratfunc(r, "f", p)?;
    let g = parse_ratfunc(r, "g", p)?;
    let prob = crate::divell::DivisionProblem::new(e1, e2, f, g, ell)?;
    let (f, g) = crate::divell::divide_by_ell(&prob)?;
    let mut out = Record::new();
    push_ratfunc(&mut out, "f", &f);
    push_ratfunc(&mut out, "g", &g);
    Ok(out)
}

struct Vertex {
    j: Fp2,
    level: u32,
}

/// Rim and `depth` descending levels of the volcano through the rim
/// reached from the first orientation of E₁₇₂₈ by `disc`.
pub fn explore_volcano(p: u64, disc: i128, ell: u64, depth: u32) -> Result<String> {
    let bound = PowersmoothBound::default();
    let sol = orient_1728(disc, ell, p, default_r_cap(p, ell))?
        .next()
        .ok_or(Error::Exhausted(0))??;
    let th = realize_endo_1728(&sol.quat)?.suitable_translate_powersmooth(ell, bound)?;
    let up = ascend_to_rim(&th, ell, bound)?;
    let top = up.steps.last().map(|s| s.endo.clone()).unwrap_or(th);
    let split = disc.rem_euclid(ell as i128) != 0 && crate::quad::prime_above_elem(top.t, top.n, ell).is_some();
    let rim = if split { rim_cycle(&top, ell)? } else { OrientedPath::empty(top.curve) };

    let mut vertices: Vec<Vertex> = Vec::new();
    let mut rim_edges: Vec<(usize, usize)> = Vec::new();
    let mut down_edges: Vec<(usize, usize)> = Vec::new();
    let mut frontier: Vec<(usize, TracedEndo)> = Vec::new();
    let rim_len = rim.len().max(1);
    let mut cur = top.clone();
    for k in 0..rim_len {
        vertices.push(Vertex { j: cur.curve.j(), level: 0 });
        frontier.push((k, cur.clone()));
        if let Some(s) = rim.steps.get(k) {
            rim_edges.push((k, (k + 1) % rim_len));
            cur = s.endo.clone();
        }
    }
    for level in 1..=depth {
        let mut next = Vec::new();
        for (parent, th) in &frontier {
            let s = suitable_translate(th, ell, bound)?;
            for (r, kind) in classify_directions(&s, ell)? {
                if kind != StepKind::Descending {
                    continue;
                }
                let nu: Isogeny = velu(&s.curve, std::slice::from_ref(&r))?;
                let child = s.transfer(&nu)?;
                vertices.push(Vertex { j: child.curve.j(), level });
                down_edges.push((*parent, vertices.len() - 1));
                next.push((vertices.len() - 1, child));
            }
        }
        frontier = next;
    }

    let mut s = format!("graph volcano {{\n  label=\"disc {disc} at p = {p}, ell = {ell}\";\n");
    for (k, v) in vertices.iter().enumerate() {
        let alt = -(v.level as i64);
        writeln!(s, "  v{k} [label=\"{}\\nalt {alt}\"];", v.j).unwrap();
    }
    for (a, b) in rim_edges {
        writeln!(s, "  v{a} -- v{b} [color=red];").unwrap();
    }
    for (a, b) in down_edges {
        writeln!(s, "  v{a} -- v{b};").unwrap();
    }
    s.push_str("}\n");
    Ok(s)
}
