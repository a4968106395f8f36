use super::{Circuit, Gate};
use crate::trit_algebra::{local_x_expansion, Axis, Level};
use std::f64::consts::PI;

pub const DEFAULT_WINDOW: usize = 8;
const ELIMINATION_TOL: f64 = 1e-12;

/// Rotations have period 4π; map into (−2π, 2π].
pub fn normalize_angle(theta: f64) -> f64 {
    let x = theta.rem_euclid(4.0 * PI);
    if x > 2.0 * PI {
        x - 4.0 * PI
    } else {
        x
    }
}

fn normalize_phase(phi: f64) -> f64 {
    let x = phi.rem_euclid(2.0 * PI);
    if x > PI {
        x - 2.0 * PI
    } else {
        x
    }
}

fn negligible(g: &Gate) -> bool {
    match *g {
        Gate::Rotation { theta, .. } => normalize_angle(theta).abs() < ELIMINATION_TOL,
        Gate::GlobalPhase { phi } => normalize_phase(phi).abs() < ELIMINATION_TOL,
        _ => false,
    }
}

/// Combines two adjacent gates into at most one: `Some(None)` when they
/// cancel, `Some(Some(g))` when they merge, `None` when they do not interact.
fn combine(a: &Gate, b: &Gate) -> Option<Option<Gate>> {
    match (a, b) {
        (Gate::Gcx { .. }, Gate::Gcx { .. }) | (Gate::LocalX { .. }, Gate::LocalX { .. }) if a == b => Some(None),
        (
            Gate::Rotation {
                axis,
                level,
                qutrit,
                theta,
            },
            Gate::Rotation {
                axis: a2,
                level: l2,
                qutrit: q2,
                theta: t2,
            },
        ) if axis == a2 && level == l2 && qutrit == q2 => {
            let merged = Gate::Rotation {
                axis: *axis,
                level: *level,
                qutrit: *qutrit,
                theta: normalize_angle(theta + t2),
            };
            Some(if negligible(&merged) { None } else { Some(merged) })
        }
        (Gate::GlobalPhase { phi }, Gate::GlobalPhase { phi: p2 }) => {
            let merged = Gate::GlobalPhase {
                phi: normalize_phase(phi + p2),
            };
            Some(if negligible(&merged) { None } else { Some(merged) })
        }
        _ => None,
    }
}

/// Removes adjacent involution pairs, merges adjacent rotations of the same
/// axis/level/qutrit, and drops negligible rotations and phases.
pub fn pass_cancel(c: &Circuit) -> Circuit {
    let mut out: Vec<Gate> = Vec::with_capacity(c.gates.len());
    for g in &c.gates {
        if negligible(g) {
            continue;
        }
        let g = match *g {
            Gate::Rotation {
                axis,
                level,
                qutrit,
                theta,
            } => Gate::Rotation {
                axis,
                level,
                qutrit,
                theta: normalize_angle(theta),
            },
            other => other,
        };
        match out.last().and_then(|top| combine(top, &g)) {
            Some(None) => {
                out.pop();
            }
            Some(Some(m)) => {
                out.pop();
                out.push(m);
            }
            None => out.push(g),
        }
    }
    Circuit::from_gates(c.width, out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Action {
    Diagonal,
    X(Level),
    Inc,
    Other,
}

fn actions(g: &Gate) -> Vec<(usize, Action)> {
    match *g {
        Gate::Rotation { axis, qutrit, .. } => {
            let act = if axis == Axis::Z {
                Action::Diagonal
            } else {
                Action::Other
            };
            vec![(qutrit, act)]
        }
        Gate::LocalX { level, qutrit } => vec![(qutrit, Action::X(level))],
        Gate::Gcx {
            control, target, level, ..
        } => vec![(control, Action::Diagonal), (target, Action::X(level))],
        Gate::Cinc { control, target, .. } => vec![(control, Action::Diagonal), (target, Action::Inc)],
        Gate::GlobalPhase { .. } => Vec::new(),
    }
}

fn compatible(a: Action, b: Action) -> bool {
    match (a, b) {
        (Action::Diagonal, Action::Diagonal) | (Action::Inc, Action::Inc) => true,
        (Action::X(l), Action::X(m)) => l == m,
        _ => false,
    }
}

/// Structural commutation: on every shared qutrit both gates act diagonally
/// or both apply commuting permutations.
pub fn commutes(a: &Gate, b: &Gate) -> bool {
    let bs = actions(b);
    actions(a)
        .iter()
        .all(|(q, x)| bs.iter().filter(|(p, _)| p == q).all(|(_, y)| compatible(*x, *y)))
}

fn is_partner(a: &Gate, b: &Gate) -> bool {
    !matches!(a, Gate::GlobalPhase { .. }) && combine(a, b).is_some()
}

/// Moves a later gate back next to an earlier partner it can cancel or merge
/// with, provided it commutes with every gate in between; then cancels.
/// Repeats until no move applies. Deterministic: earliest gate first,
/// nearest partner first.
pub fn pass_commute_reorder(c: &Circuit, window: usize) -> Circuit {
    let mut gates = pass_cancel(c).gates;
    loop {
        let mut moved = false;
        let mut i = 0;
        while i < gates.len() {
            let end = (i + 1 + window).min(gates.len());
            for j in i + 2..end {
                if is_partner(&gates[i], &gates[j]) && gates[i + 1..j].iter().all(|k| commutes(k, &gates[j])) {
                    let g = gates.remove(j);
                    gates.insert(i + 1, g);
                    moved = true;
                    break;
                }
            }
            i += 1;
        }
        gates = pass_cancel(&Circuit::from_gates(c.width, gates)).gates;
        if !moved {
            break;
        }
    }
    Circuit::from_gates(c.width, gates)
}

/// GCX(m)·GCX(m') on the same control, target and level becomes
/// GCX(m'')·X^{ij} on the target, m'' the remaining value.
pub fn pass_gcx_pair(c: &Circuit) -> Circuit {
    let mut out: Vec<Gate> = Vec::with_capacity(c.gates.len());
    let mut k = 0;
    while k < c.gates.len() {
        if k + 1 < c.gates.len() {
            if let (
                Gate::Gcx {
                    control,
                    value,
                    target,
                    level,
                },
                Gate::Gcx {
                    control: c2,
                    value: v2,
                    target: t2,
                    level: l2,
                },
            ) = (c.gates[k], c.gates[k + 1])
            {
                if control == c2 && target == t2 && level == l2 && value != v2 {
                    out.push(Gate::gcx(control, 3 - value - v2, target, level));
                    out.push(Gate::LocalX { level, qutrit: target });
                    k += 2;
                    continue;
                }
            }
        }
        out.push(c.gates[k]);
        k += 1;
    }
    Circuit::from_gates(c.width, out)
}

/// Application-order pair [GCX(01), GCX(02)] with equal control, value and
/// target is one controlled increment.
pub fn pass_fuse_cinc(c: &Circuit) -> Circuit {
    let mut out: Vec<Gate> = Vec::with_capacity(c.gates.len());
    let mut k = 0;
    while k < c.gates.len() {
        if k + 1 < c.gates.len() {
            if let (
                Gate::Gcx {
                    control,
                    value,
                    target,
                    level: Level::L01,
                },
                Gate::Gcx {
                    control: c2,
                    value: v2,
                    target: t2,
                    level: Level::L02,
                },
            ) = (c.gates[k], c.gates[k + 1])
            {
                if control == c2 && value == v2 && target == t2 {
                    out.push(Gate::Cinc { control, value, target });
                    k += 2;
                    continue;
                }
            }
        }
        out.push(c.gates[k]);
        k += 1;
    }
    Circuit::from_gates(c.width, out)
}

/// Replaces each LocalX by its exact rotation expansion plus a phase gate.
pub fn pass_expand_local_x(c: &Circuit) -> Circuit {
    let mut out = Vec::with_capacity(c.gates.len());
    for g in &c.gates {
        if let Gate::LocalX { level, qutrit } = *g {
            let e = local_x_expansion(level);
            out.push(Gate::GlobalPhase { phi: e.phase });
            for (axis, level, theta) in e.rotations {
                out.push(Gate::Rotation {
                    axis,
                    level,
                    qutrit,
                    theta,
                });
            }
        } else {
            out.push(*g);
        }
    }
    Circuit::from_gates(c.width, out)
}

/// Sums all phase gates into a single one at the head of the circuit.
pub fn pass_collect_phases(c: &Circuit) -> Circuit {
    let mut phi = 0.0;
    let mut rest = Vec::with_capacity(c.gates.len());
    for g in &c.gates {
        match g {
            Gate::GlobalPhase { phi: p } => phi += p,
            other => rest.push(*other),
        }
    }
    let phi = normalize_phase(phi);
    let mut gates = Vec::with_capacity(rest.len() + 1);
    if phi.abs() >= ELIMINATION_TOL {
        gates.push(Gate::GlobalPhase { phi });
    }
    gates.extend(rest);
    Circuit::from_gates(c.width, gates)
}

/// Pass pipeline configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PassConfig {
    pub window: usize,
    pub gcx_pair: bool,
    pub fuse_cinc: bool,
}

impl Default for PassConfig {
    fn default() -> Self {
        Self {
            window: DEFAULT_WINDOW,
            gcx_pair: true,
            fuse_cinc: true,
        }
    }
}

impl PassConfig {
    /// Commute-reorder with cancellation and the GCX pair rewrite, repeated
    /// until no rewrite applies, then CINC fusion.
    pub fn run(&self, c: &Circuit) -> Circuit {
        let mut out = pass_commute_reorder(c, self.window);
        if self.gcx_pair {
            loop {
                let t = pass_gcx_pair(&out);
                if t == out {
                    break;
                }
                out = pass_commute_reorder(&t, self.window);
            }
        }
        if self.fuse_cinc {
            out = pass_fuse_cinc(&out);
        }
        out
    }
}
