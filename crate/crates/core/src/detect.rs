//! Syntactic detectors for overtwisting patterns in a given front.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::front::{parse_token, validate, Event, FrontError, FrontWord, OrientedFront};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatternKind {
    ZigZag,
    Fig1Config,
    StabilizedComponent,
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternKind::ZigZag => "zigzag",
            PatternKind::Fig1Config => "fig1-config",
            PatternKind::StabilizedComponent => "stabilized-component",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternWitness {
    pub kind: PatternKind,
    pub event_indices: Vec<usize>,
    pub component: usize,
    /// cusps along the knot from U to U' (template matches only)
    pub parity_data: Option<usize>,
}

/// Strands with no crossings that are born on one branch of their left
/// cusp and die on the other branch of their right cusp.
pub fn find_zigzags(w: &FrontWord) -> Result<Vec<PatternWitness>, FrontError> {
    let map = validate(w)?;
    Ok(map
        .strands
        .iter()
        .enumerate()
        .filter(|(_, s)| s.crossings.is_empty() && s.birth_upper != s.death_upper)
        .map(|(i, s)| PatternWitness {
            kind: PatternKind::ZigZag,
            event_indices: vec![s.birth, s.death],
            component: map.component_of[i],
            parity_data: None,
        })
        .collect())
}

pub fn stabilized_components(w: &FrontWord) -> Result<BTreeSet<usize>, FrontError> {
    Ok(find_zigzags(w)?.into_iter().map(|z| z.component).collect())
}

/// Which strand of a template event a slot refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    pub event: usize,
    pub upper: bool,
}

/// Event-subword pattern with two marked strands `U` and `U'`.
///
/// Text form: `X0 | U 0 upper | U' 0 lower`. Event positions are offsets
/// from the lowest position matched; slots name a template event and the
/// strand entering it from above or below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fig1Template {
    pub events: Vec<Event>,
    pub u: Slot,
    pub u_prime: Slot,
}

pub const DEFAULT_FIG1_TEMPLATE: &str = "X0 | U 0 upper | U' 0 lower";

impl Default for Fig1Template {
    fn default() -> Self {
        DEFAULT_FIG1_TEMPLATE.parse().expect("built-in template parses")
    }
}

impl FromStr for Fig1Template {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split('|').map(str::trim).collect();
        let [events, a, b] = parts.as_slice() else {
            return Err("expected `<events> | U <i> <upper|lower> | U' <i> <upper|lower>`".into());
        };
        let events = events
            .split_whitespace()
            .map(|t| {
                // offsets are 0-based, shift to reuse the 1-based token parser
                let (k, n) = t.split_at(1);
                let off: usize = n.parse().map_err(|_| format!("bad template event `{t}`"))?;
                let e = parse_token(&format!("{k}{}", off + 1)).ok_or(format!("bad template event `{t}`"))?;
                Ok(with_pos(e, off))
            })
            .collect::<Result<Vec<_>, String>>()?;
        if events.is_empty() {
            return Err("template has no events".into());
        }
        let slot = |text: &str, name: &str| -> Result<Slot, String> {
            let f: Vec<&str> = text.split_whitespace().collect();
            match f.as_slice() {
                [n, i, side] if *n == name => {
                    let event: usize = i.parse().map_err(|_| format!("bad slot `{text}`"))?;
                    if event >= events.len() {
                        return Err(format!("slot `{text}` names a missing event"));
                    }
                    let upper = match *side {
                        "upper" => true,
                        "lower" => false,
                        _ => return Err(format!("bad slot side in `{text}`")),
                    };
                    Ok(Slot { event, upper })
                }
                _ => Err(format!("expected `{name} <i> <upper|lower>`, got `{text}`")),
            }
        };
        Ok(Fig1Template { u: slot(a, "U")?, u_prime: slot(b, "U'")?, events })
    }
}

impl fmt::Display for Fig1Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ev: Vec<String> = self
            .events
            .iter()
            .map(|e| {
                let k = match e {
                    Event::Lcusp(_) => 'L',
                    Event::Rcusp(_) => 'R',
                    Event::Cross(_) => 'X',
                };
                format!("{k}{}", e.pos())
            })
            .collect();
        let side = |s: Slot| if s.upper { "upper" } else { "lower" };
        write!(
            f,
            "{} | U {} {} | U' {} {}",
            ev.join(" "),
            self.u.event,
            side(self.u),
            self.u_prime.event,
            side(self.u_prime)
        )
    }
}

fn with_pos(e: Event, p: usize) -> Event {
    match e {
        Event::Lcusp(_) => Event::Lcusp(p),
        Event::Rcusp(_) => Event::Rcusp(p),
        Event::Cross(_) => Event::Cross(p),
    }
}

fn same_kind(a: Event, b: Event) -> bool {
    std::mem::discriminant(&a) == std::mem::discriminant(&b)
}

/// Cusps passed travelling along `f` from strand `from` to strand `to`.
pub fn cusps_between(f: &OrientedFront, c: usize, from: usize, to: usize) -> usize {
    let order = &f.map.components[c].strands;
    let m = order.len();
    let i = order.iter().position(|&s| s == from).expect("strand on component");
    let j = order.iter().position(|&s| s == to).expect("strand on component");
    // traversal order follows the orientation unless the seed was reversed
    if f.seed(c) == crate::front::Direction::Right {
        (j + m - i) % m
    } else {
        (i + m - j) % m
    }
}

/// First match of the template on component `c` with an odd number of
/// cusps between `U` and `U'`.
pub fn has_fig1_config(f: &OrientedFront, c: usize, t: &Fig1Template) -> Option<PatternWitness> {
    let ev = &f.word.events;
    let base_off = t.events[0].pos();
    for start in 0..ev.len().saturating_sub(t.events.len() - 1) {
        let first = ev[start];
        if !same_kind(first, t.events[0]) || first.pos() < base_off {
            continue;
        }
        let base = first.pos() - base_off;
        let fits = t
            .events
            .iter()
            .enumerate()
            .all(|(k, &te)| same_kind(ev[start + k], te) && ev[start + k].pos() == base + te.pos());
        if !fits {
            continue;
        }
        let strand = |s: Slot| {
            let (a, b) = f.map.event_strands[start + s.event];
            if s.upper {
                a
            } else {
                b
            }
        };
        let (u, v) = (strand(t.u), strand(t.u_prime));
        if u == v || f.map.component_of[u] != c || f.map.component_of[v] != c {
            continue;
        }
        let n = cusps_between(f, c, u, v);
        if n % 2 == 1 {
            return Some(PatternWitness {
                kind: PatternKind::Fig1Config,
                event_indices: (start..start + t.events.len()).collect(),
                component: c,
                parity_data: Some(n),
            });
        }
    }
    None
}
