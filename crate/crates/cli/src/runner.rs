use rayon::prelude::*;
use serde_json::{json, Map, Value};

use relcoh::arith::{BaseScalar, Rational, Ring};
use relcoh::basechange::{base_change_check, find_witness, Witness};
use relcoh::duality::{dual_exactness_check, duality_check, ShortExactSequence, TorsionSide};
use relcoh::groebner::{free_resolution, FreeElement, ModulePresentation};
use relcoh::homology::{default_maxlen, ext_degreewise, GradedAModuleData, PieceData};
use relcoh::localcoh::{local_cohomology_extlim, local_cohomology_from};

use crate::ast::{Command, Matrix, Session, Statement};
use crate::parser::Scope;

#[derive(Clone, Debug)]
pub struct Config {
    /// Degree window for commands without `window=`.
    pub window: (i64, i64),
    pub t_max: usize,
    pub streak: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            window: (-12, 4),
            t_max: 6,
            streak: 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A result the theorems rule out, e.g. a rank mismatch in duality.
    Violation,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub target: String,
    pub status: Status,
    pub json: Value,
}

/// Runs every command of the session. Commands run in parallel; reports
/// come back in statement order.
pub fn run_session(s: &Session, cfg: &Config) -> Vec<Report> {
    let mut scope = Scope::default();
    let mut commands = Vec::new();
    for st in &s.statements {
        scope.declare(st);
        if let Statement::Command(c) = st {
            commands.push(c);
        }
    }
    commands.par_iter().map(|c| run_command(&scope, c, cfg)).collect()
}

fn run_command(scope: &Scope, c: &Command, cfg: &Config) -> Report {
    let target = c.targets().join(" ");
    let mut body = Map::new();
    body.insert("command".into(), json!(c.name()));
    body.insert("target".into(), json!(target));
    let status = match execute(scope, c, cfg, &mut body) {
        Ok(s) => s,
        Err(e) => {
            body.insert("error".into(), json!(e.to_string()));
            Status::Error
        }
    };
    body.insert("status".into(), json!(status.as_str()));
    for key in ["params", "pieces", "mismatches"] {
        body.entry(key).or_insert_with(|| if key == "params" { json!({}) } else { json!([]) });
    }
    Report {
        command: c.name().to_string(),
        target,
        status,
        json: Value::Object(body),
    }
}

fn module<'a>(scope: &'a Scope, name: &str) -> relcoh::Result<&'a ModulePresentation> {
    scope
        .modules
        .get(name)
        .ok_or_else(|| relcoh::Error::Structural(format!("module `{name}` failed to build")))
}

fn scalar(ring: &Ring, s: &BaseScalar) -> Value {
    json!(s.display_with(&ring.param))
}

fn piece_json(ring: &Ring, i: Option<usize>, d: i64, p: &PieceData) -> Value {
    let mut obj = Map::new();
    if let Some(i) = i {
        obj.insert("i".into(), json!(i));
    }
    obj.insert("d".into(), json!(d));
    obj.insert("rank".into(), json!(p.rank));
    obj.insert("torsion".into(), p.torsion.iter().map(|f| scalar(ring, f)).collect());
    Value::Object(obj)
}

/// Nonzero pieces only; the window in `params` says which degrees were
/// computed.
fn pieces_json(ring: &Ring, i: Option<usize>, data: &GradedAModuleData) -> Vec<Value> {
    data.nonzero().map(|(d, p)| piece_json(ring, i, d, p)).collect()
}

fn window_json(w: (i64, i64)) -> Value {
    json!([w.0, w.1])
}

fn execute(scope: &Scope, c: &Command, cfg: &Config, body: &mut Map<String, Value>) -> relcoh::Result<Status> {
    let mut status = Status::Ok;
    match c {
        Command::LocalCoh {
            target,
            i,
            window,
            oracle,
        } => {
            let m = module(scope, target)?;
            let ring = m.ring();
            let w = window.unwrap_or(cfg.window);
            let mut params = json!({"i": [i.0, i.1], "window": window_json(w), "oracle": oracle});
            if *oracle {
                params["t_max"] = json!(cfg.t_max);
                params["streak"] = json!(cfg.streak);
            }
            body.insert("params".into(), params);
            if i.0 == i.1 {
                body.insert("i".into(), json!(i.0));
            }
            let res = free_resolution(m, default_maxlen(m.nvars()));
            let per_i: Vec<relcoh::Result<_>> = (i.0..=i.1)
                .into_par_iter()
                .map(|k| {
                    let tor = local_cohomology_from(&res, k, w)?;
                    let lim = if *oracle {
                        Some(local_cohomology_extlim(m, k, w, cfg.t_max, cfg.streak)?)
                    } else {
                        None
                    };
                    Ok((k, tor, lim))
                })
                .collect();
            let mut pieces = Vec::new();
            let mut mismatches = Vec::new();
            let mut stability = Vec::new();
            for r in per_i {
                let (k, tor, lim) = r?;
                pieces.extend(pieces_json(ring, Some(k), &tor));
                let Some(lim) = lim else { continue };
                stability.push(json!({
                    "i": k,
                    "stable": lim.stable,
                    "stable_from": lim.stable_from,
                }));
                for d in w.0..=w.1 {
                    let a = tor.get(d).cloned().unwrap_or_default();
                    let b = lim.data.get(d).cloned().unwrap_or_default();
                    if a != b {
                        mismatches.push(json!({
                            "i": k,
                            "d": d,
                            "tor": piece_json(ring, None, d, &a),
                            "oracle": piece_json(ring, None, d, &b),
                            "stable": lim.stable,
                        }));
                        if lim.stable {
                            status = Status::Violation;
                        }
                    }
                }
            }
            body.insert("pieces".into(), pieces.into());
            body.insert("mismatches".into(), mismatches.into());
            if *oracle {
                body.insert("stability".into(), stability.into());
            }
        }
        Command::Ext { target, j, window } => {
            let m = module(scope, target)?;
            let w = window.unwrap_or(cfg.window);
            body.insert("params".into(), json!({"j": j, "window": window_json(w)}));
            let data = ext_degreewise(m, *j, w)?;
            body.insert("pieces".into(), pieces_json(m.ring(), Some(*j), &data).into());
        }
        Command::Duality { target, window } => {
            let m = module(scope, target)?;
            let ring = m.ring();
            let w = window.unwrap_or(cfg.window);
            body.insert("params".into(), json!({"window": window_json(w)}));
            let rep = duality_check(m, w)?;
            let pieces: Vec<Value> = rep
                .local
                .iter()
                .enumerate()
                .flat_map(|(i, h)| pieces_json(ring, Some(i), h))
                .collect();
            body.insert("pieces".into(), pieces.into());
            let mismatches: Vec<Value> = rep
                .mismatches
                .iter()
                .map(|mm| json!({"i": mm.i, "d": mm.d, "local_rank": mm.local_rank, "dual_rank": mm.dual_rank}))
                .collect();
            if !mismatches.is_empty() {
                status = Status::Violation;
            }
            body.insert("mismatches".into(), mismatches.into());
            let torsion: Vec<Value> = rep
                .torsion
                .iter()
                .map(|t| {
                    let side = match t.side {
                        TorsionSide::LocalCohomology => "localcoh",
                        TorsionSide::Ext => "ext",
                    };
                    json!({"side": side, "i": t.i, "d": t.d, "factor": scalar(ring, &t.factor)})
                })
                .collect();
            body.insert("torsion".into(), torsion.into());
            body.insert("obstruction".into(), scalar(ring, &rep.obstruction));
        }
        Command::BaseChange {
            target,
            at,
            i,
            window,
        } => {
            let m = module(scope, target)?;
            let ring = m.ring();
            let w = window.unwrap_or(cfg.window);
            let (lo, hi) = i.unwrap_or((0, m.nvars()));
            let at_json: Vec<Value> = at.iter().map(|c| json!(c.to_string())).collect();
            body.insert(
                "params".into(),
                json!({"at": at_json, "i": [lo, hi], "window": window_json(w)}),
            );
            if !ring.base.has_parameter() {
                return Err(relcoh::Error::BaseRing("base change needs coefficients in QQ[t]".into()));
            }
            let witness = find_witness(m, w, 0..=m.nvars())?;
            let res = free_resolution(m, default_maxlen(m.nvars()));
            let mut pieces = Vec::new();
            for k in lo..=hi {
                pieces.extend(pieces_json(ring, Some(k), &local_cohomology_from(&res, k, w)?));
            }
            body.insert("pieces".into(), pieces.into());
            let jobs: Vec<(&Rational, usize)> = at.iter().flat_map(|c| (lo..=hi).map(move |k| (c, k))).collect();
            let reports: Vec<relcoh::Result<_>> = jobs
                .par_iter()
                .map(|(c, k)| base_change_check(m, *k, c, w, Some(&witness)))
                .collect();
            let mut mismatches = Vec::new();
            for r in reports {
                let r = r?;
                if r.violates_theorem() {
                    status = Status::Violation;
                }
                for e in r.mismatches() {
                    mismatches.push(json!({
                        "i": r.i,
                        "c": r.c.to_string(),
                        "d": e.d,
                        "generic_rank": e.generic_rank,
                        "special_dim": e.special_dim,
                        "g_vanishes": r.g_vanishes,
                    }));
                }
            }
            body.insert("mismatches".into(), mismatches.into());
            let vanishes: Vec<Value> = at
                .iter()
                .map(|c| json!({"c": c.to_string(), "g_vanishes": witness.vanishes_at(c)}))
                .collect();
            body.insert("witness".into(), json!({"g": scalar(ring, &witness.g), "at": vanishes}));
        }
        Command::DualExact { targets, maps, window } => {
            let ms = targets
                .iter()
                .map(|t| module(scope, t).cloned())
                .collect::<relcoh::Result<Vec<_>>>()?;
            let w = window.unwrap_or(cfg.window);
            body.insert("params".into(), json!({"window": window_json(w), "maps": if maps.is_some() { "given" } else { "identity" }}));
            let n = ms[1].nvars();
            let (f, g) = match maps {
                Some((f, g)) => (images(f, ms[0].rank(), ms[1].twists()), images(g, ms[1].rank(), ms[2].twists())),
                None => (identity(n, ms[1].twists()), identity(n, ms[2].twists())),
            };
            let [m1, m2, m3]: [ModulePresentation; 3] = ms.try_into().expect("three modules");
            let ses = ShortExactSequence::new(m1, m2, m3, f, g)?;
            let rep = dual_exactness_check(&ses, w)?;
            let ring = ses.m2.ring();
            let failures: Vec<Value> = rep
                .failures
                .iter()
                .map(|f| {
                    let mut v = piece_json(ring, None, f.d, &f.cohomology);
                    v["spot"] = json!(f.spot);
                    v
                })
                .collect();
            if rep.hypothesis_holds && !rep.exact {
                status = Status::Violation;
            }
            body.insert("mismatches".into(), failures.into());
            body.insert("hypothesis_holds".into(), json!(rep.hypothesis_holds));
            body.insert("torsion_degrees".into(), json!(rep.torsion_degrees));
            body.insert("exact".into(), json!(rep.exact));
        }
        Command::Witness { target, window } => {
            let m = module(scope, target)?;
            let ring = m.ring();
            let w = window.unwrap_or(cfg.window);
            body.insert("params".into(), json!({"window": window_json(w)}));
            let wit = find_witness(m, w, 0..=m.nvars())?;
            body.insert("g".into(), scalar(ring, &wit.g));
            body.insert("witness".into(), witness_json(ring, &wit));
        }
    }
    Ok(status)
}

fn witness_json(ring: &Ring, w: &Witness) -> Value {
    let provenance: Vec<Value> = w
        .provenance
        .iter()
        .map(|p| {
            let mut v = json!({"source": p.source.as_str(), "d": p.d, "factor": scalar(ring, &p.factor)});
            if let Some(i) = p.i {
                v["i"] = json!(i);
            }
            v
        })
        .collect();
    json!({"g": scalar(ring, &w.g), "provenance": provenance})
}

/// Columns of `m` as elements of the free module with `twists`.
fn images(m: &Matrix, ncols: usize, twists: &[i64]) -> Vec<FreeElement> {
    (0..ncols)
        .map(|k| FreeElement::new(m.iter().map(|row| row[k].clone()).collect(), twists.to_vec()))
        .collect()
}

fn identity(n: usize, twists: &[i64]) -> Vec<FreeElement> {
    (0..twists.len()).map(|k| FreeElement::basis(n, twists, k)).collect()
}
