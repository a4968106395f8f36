use super::{Circuit, Gate};
use crate::trit_algebra::{Axis, Level};
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// Renders a circuit in the line-based text format.
pub fn serialize(c: &Circuit) -> String {
    let mut s = String::new();
    writeln!(s, "QUTRITS {}", c.width).unwrap();
    for g in &c.gates {
        match *g {
            Gate::GlobalPhase { phi } => writeln!(s, "PHASE {phi:.17e}"),
            Gate::Rotation {
                axis,
                level,
                qutrit,
                theta,
            } => writeln!(s, "R {} {} q{} {:.17e}", axis.label(), level, qutrit, theta),
            Gate::LocalX { level, qutrit } => writeln!(s, "X {level} q{qutrit}"),
            Gate::Gcx {
                control,
                value,
                target,
                level,
            } => writeln!(s, "GCX q{control}={value} q{target} {level}"),
            Gate::Cinc { control, value, target } => writeln!(s, "CINC q{control}={value} q{target}"),
        }
        .unwrap();
    }
    s
}

fn qutrit(tok: &str) -> Result<usize, String> {
    tok.strip_prefix('q')
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| format!("expected qutrit like q0, got `{tok}`"))
}

fn control(tok: &str) -> Result<(usize, usize), String> {
    let (q, m) = tok
        .split_once('=')
        .ok_or_else(|| format!("expected control like q0=1, got `{tok}`"))?;
    let m = m.parse().map_err(|_| format!("bad control value `{m}`"))?;
    Ok((qutrit(q)?, m))
}

fn angle(tok: &str) -> Result<f64, String> {
    let x: f64 = tok.parse().map_err(|_| format!("bad angle `{tok}`"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("non-finite angle `{tok}`"))
    }
}

fn level(tok: &str) -> Result<Level, String> {
    Level::parse(tok).ok_or_else(|| format!("bad level `{tok}`"))
}

fn parse_gate(toks: &[&str]) -> Result<Gate, String> {
    let arity = |n: usize| {
        if toks.len() == n {
            Ok(())
        } else {
            Err(format!(
                "`{}` takes {} operands, got {}",
                toks[0],
                n - 1,
                toks.len() - 1
            ))
        }
    };
    match toks[0] {
        "PHASE" => {
            arity(2)?;
            Ok(Gate::GlobalPhase { phi: angle(toks[1])? })
        }
        "R" => {
            arity(5)?;
            let axis = Axis::parse(toks[1]).ok_or_else(|| format!("bad axis `{}`", toks[1]))?;
            Ok(Gate::Rotation {
                axis,
                level: level(toks[2])?,
                qutrit: qutrit(toks[3])?,
                theta: angle(toks[4])?,
            })
        }
        "X" => {
            arity(3)?;
            Ok(Gate::LocalX {
                level: level(toks[1])?,
                qutrit: qutrit(toks[2])?,
            })
        }
        "GCX" => {
            arity(4)?;
            let (c, m) = control(toks[1])?;
            Ok(Gate::gcx(c, m, qutrit(toks[2])?, level(toks[3])?))
        }
        "CINC" => {
            arity(3)?;
            let (c, m) = control(toks[1])?;
            Ok(Gate::Cinc {
                control: c,
                value: m,
                target: qutrit(toks[2])?,
            })
        }
        other => Err(format!("unknown gate `{other}`")),
    }
}

/// Parses the text format. The header must be the first non-comment line;
/// every gate is validated against it.
pub fn deserialize(text: &str) -> Result<Circuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let err = |message: String| ParseError { line, message };
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match circuit.as_mut() {
            None => {
                if toks[0] != "QUTRITS" || toks.len() != 2 {
                    return Err(err("expected header `QUTRITS <n>`".into()));
                }
                let n: usize = toks[1].parse().map_err(|_| err(format!("bad width `{}`", toks[1])))?;
                if n == 0 {
                    return Err(err("width must be positive".into()));
                }
                circuit = Some(Circuit::new(n));
            }
            Some(c) => {
                if toks[0] == "QUTRITS" {
                    return Err(err("duplicate header".into()));
                }
                let g = parse_gate(&toks).map_err(err)?;
                g.validate(c.width).map_err(|e| err(e.to_string()))?;
                c.push(g);
            }
        }
    }
    circuit.ok_or(ParseError {
        line: 0,
        message: "missing `QUTRITS <n>` header".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sample() -> Circuit {
        Circuit::from_gates(
            3,
            vec![
                Gate::GlobalPhase { phi: PI / 3.0 },
                Gate::Rotation {
                    axis: Axis::Y,
                    level: Level::L02,
                    qutrit: 2,
                    theta: -0.123_456_789_012_345_68,
                },
                Gate::LocalX {
                    level: Level::L12,
                    qutrit: 0,
                },
                Gate::gcx(1, 2, 0, Level::L01),
                Gate::Cinc {
                    control: 2,
                    value: 0,
                    target: 1,
                },
            ],
        )
    }

    #[test]
    fn round_trip_is_exact() {
        let c = sample();
        assert_eq!(deserialize(&serialize(&c)).unwrap(), c);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header next\nQUTRITS 2\n\nGCX q0=1 q1 01 # trailing\nR z 12 q1 0.5\n";
        let c = deserialize(text).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.gates[1], Gate::rz(Level::L12, 1, 0.5));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = deserialize("QUTRITS 2\nR z 01 q0 0.1\nGCX q0=3 q1 01\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = deserialize("QUTRITS 2\nFOO q1\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = deserialize("R z 01 q0 0.1\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert_eq!(deserialize("# none\n").unwrap_err().line, 0);
        assert!(deserialize("QUTRITS 2\nR z 01 q2 0.1\n").is_err());
        assert!(deserialize("QUTRITS 2\nR z 01 q0 nan\n").is_err());
    }
}
