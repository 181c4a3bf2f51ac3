use relcoh::arith::Ring;

use crate::ast::{Command, Matrix, Session, Statement};
use crate::parser::Scope;

fn matrix(ring: &Ring, m: &Matrix) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|p| ring.show(p)).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn window(w: &Option<(i64, i64)>) -> String {
    w.map(|(a, b)| format!(" window={a}..{b}")).unwrap_or_default()
}

/// Canonical text of a session, one statement per line. Parsing the output
/// gives back an equal session.
pub fn print_session(s: &Session) -> String {
    let mut scope = Scope::default();
    let mut out = String::new();
    for st in &s.statements {
        let line = match st {
            Statement::BaseRing { name, param } => match param {
                Some(p) => format!("ring {name} = QQ[{p}];"),
                None => format!("ring {name} = QQ;"),
            },
            Statement::PolyRing { name, base, vars } => format!("ring {name} = {base}[{}];", vars.join(",")),
            Statement::Module { name, rows, twists } => {
                let ring = scope.active.clone().expect("module after a ring");
                let tw = twists
                    .as_ref()
                    .map(|t| format!(" twists={}", t.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
                    .unwrap_or_default();
                format!("module {name} = coker {}{tw};", matrix(&ring, rows))
            }
            Statement::Command(c) => command(&scope, c),
        };
        scope.declare(st);
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn command(scope: &Scope, c: &Command) -> String {
    match c {
        Command::LocalCoh {
            target,
            i,
            window: w,
            oracle,
        } => format!(
            "compute localcoh {target} i={}..{}{}{};",
            i.0,
            i.1,
            window(w),
            if *oracle { " oracle" } else { "" }
        ),
        Command::Ext { target, j, window: w } => format!("compute ext {target} j={j}{};", window(w)),
        Command::Duality { target, window: w } => format!("check duality {target}{};", window(w)),
        Command::BaseChange {
            target,
            at,
            i,
            window: w,
        } => {
            let at: Vec<String> = at.iter().map(|c| c.to_string()).collect();
            let i = i.map(|(a, b)| format!(" i={a}..{b}")).unwrap_or_default();
            format!("check basechange {target} at {}{i}{};", at.join(","), window(w))
        }
        Command::DualExact {
            targets,
            maps,
            window: w,
        } => {
            let maps = match maps {
                Some((f, g)) => {
                    let ring = &scope.module_rings[&targets[1]];
                    format!(" maps {} {}", matrix(ring, f), matrix(ring, g))
                }
                None => String::new(),
            };
            format!("check dualexact {}{maps}{};", targets.join(" "), window(w))
        }
        Command::Witness { target, window: w } => format!("find witness {target}{};", window(w)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_session;

    #[test]
    fn round_trip() {
        let text = "ring A = QQ[t]; ring R = A[x,y];\n\
                    module M = coker [[(t^2+1)*x, -t*y, 1/2*x^2 - y^2/3]] twists=[1];\n\
                    compute localcoh M i=0..2 window=-8..2 oracle;\n\
                    check basechange M at 1,-1/2 i=1;\n";
        let s = parse_session(text).unwrap();
        let printed = print_session(&s);
        assert_eq!(parse_session(&printed).unwrap(), s);
        assert_eq!(print_session(&parse_session(&printed).unwrap()), printed);
    }
}
