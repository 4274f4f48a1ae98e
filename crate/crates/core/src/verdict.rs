//! Rule engine turning a surgery diagram plus declared smooth facts into a
//! tightness verdict with the rules that support it.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::detect::{find_zigzags, has_fig1_config, Fig1Template};
use crate::hfmod::{image_ranks, ImageRanks, TriangleRanks};
use crate::surgery::{homology, Coefficient, ContactSurgeryDiagram, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Overtwisted,
    TbBoundViolated,
    ChatVanishes,
    CplusVanishes,
    Tight,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Overtwisted => "overtwisted",
            Verdict::TbBoundViolated => "tb-bound-violated",
            Verdict::ChatVanishes => "chat-vanishes",
            Verdict::CplusVanishes => "cplus-vanishes",
            Verdict::Tight => "tight",
            Verdict::Unknown => "unknown",
        })
    }
}

pub struct Rule {
    pub id: &'static str,
    pub verdict: Verdict,
    pub citation: &'static str,
}

pub const RULES: &[Rule] = &[
    Rule {
        id: "ot.fig1",
        verdict: Verdict::Overtwisted,
        citation: "+1 surgery on a knot whose front has the marked strand pair U, U' with odd cusp count between them is overtwisted",
    },
    Rule {
        id: "ot.zigzag-knot",
        verdict: Verdict::Overtwisted,
        citation: "+1 surgery on a stabilized knot is overtwisted",
    },
    Rule {
        id: "ot.zigzag-link",
        verdict: Verdict::Overtwisted,
        citation: "a +1 coefficient on a stabilized link component makes the surgery overtwisted",
    },
    Rule {
        id: "ot.negative-torus",
        verdict: Verdict::Overtwisted,
        citation: "+1 surgery on any Legendrian negative torus knot is overtwisted",
    },
    Rule {
        id: "bound.tb-lspace",
        verdict: Verdict::TbBoundViolated,
        citation: "if n-surgery on K (n > 0) is an L-space then every Legendrian K has tb <= n",
    },
    Rule {
        id: "vanish.chat-higher-tb",
        verdict: Verdict::ChatVanishes,
        citation: "+1 surgery on a Legendrian knot has vanishing contact invariant if a smoothly isotopic Legendrian has larger tb",
    },
    Rule {
        id: "vanish.cplus-low-tb",
        verdict: Verdict::CplusVanishes,
        citation: "+1 surgery on a knot with tb <= -2 has vanishing c+",
    },
    Rule {
        id: "tight.legendrian-surgery",
        verdict: Verdict::Tight,
        citation: "-1 surgery on every component is Stein fillable, so the contact invariant is nonzero and the result is tight",
    },
    Rule {
        id: "tight.slice-genus",
        verdict: Verdict::Tight,
        citation: "+1 surgery on a knot with tb = 2 g_s - 1 is tight",
    },
];

pub fn rule(id: &str) -> &'static Rule {
    RULES.iter().find(|r| r.id == id).expect("rule id in table")
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComponentFacts {
    pub smooth_type: Option<String>,
    pub slice_genus: Option<u32>,
    pub l_space_slope: Option<u32>,
    pub alt_representative: Option<(i64, i64)>,
}

impl ComponentFacts {
    fn is_negative_torus(&self) -> bool {
        self.smooth_type.as_deref().is_some_and(|t| {
            let t: String = t.to_ascii_lowercase().chars().map(|c| if c == '_' || c == ' ' { '-' } else { c }).collect();
            t == "negative-torus-knot" || t == "negative-torus"
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactStore {
    pub by_component: BTreeMap<usize, ComponentFacts>,
}

impl FactStore {
    pub fn get(&self, c: usize) -> ComponentFacts {
        self.by_component.get(&c).cloned().unwrap_or_default()
    }

    pub fn entry(&mut self, c: usize) -> &mut ComponentFacts {
        self.by_component.entry(c).or_default()
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FactError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown component `{name}`")]
    UnknownComponent { line: usize, name: String },
    #[error("line {line}: fact `{key}` declared twice for component {component}")]
    Duplicate { line: usize, component: usize, key: String },
}

/// Parses `fact <component> <key> <value>` lines. Components are given by
/// index or by label of `d`.
pub fn parse_facts(text: &str, d: &ContactSurgeryDiagram) -> Result<FactStore, FactError> {
    let mut store = FactStore::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() < 4 || toks[0] != "fact" {
            return Err(FactError::Syntax { line, msg: "expected `fact <component> <key> <value>`".into() });
        }
        let name = toks[1];
        let c = match name.parse::<usize>() {
            Ok(c) if c < d.size() => c,
            _ => d
                .labels
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| FactError::UnknownComponent { line, name: name.into() })?,
        };
        let key = toks[2];
        let value = toks[3..].join(" ");
        let bad = |what: &str| FactError::Syntax { line, msg: format!("bad {what} `{value}`") };
        let f = store.entry(c);
        let fresh = match key {
            "smooth_type" => f.smooth_type.replace(value.clone()).is_none(),
            "slice_genus" => f.slice_genus.replace(value.parse().map_err(|_| bad("genus"))?).is_none(),
            "l_space_slope" => {
                let n: u32 = value.parse().map_err(|_| bad("slope"))?;
                if n == 0 {
                    return Err(bad("slope"));
                }
                f.l_space_slope.replace(n).is_none()
            }
            "alt_representative" => {
                let parts: Vec<i64> = toks[3..].iter().map(|t| t.parse()).collect::<Result<_, _>>().map_err(|_| bad("representative"))?;
                let [tb, rot] = parts[..] else { return Err(bad("representative")) };
                f.alt_representative.replace((tb, rot)).is_none()
            }
            other => return Err(FactError::Syntax { line, msg: format!("unknown fact key `{other}`") }),
        };
        if !fresh {
            return Err(FactError::Duplicate { line, component: c, key: key.into() });
        }
    }
    Ok(store)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reason {
    pub rule_id: &'static str,
    pub citation: &'static str,
    pub component: Option<usize>,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TbTrace {
    pub h1_orders: (u64, u64),
    pub triangle: TriangleRanks,
    pub images: ImageRanks,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TbBoundCheck {
    pub holds: bool,
    pub trace: Option<TbTrace>,
}

/// `tb <= n` for a knot with an L-space surgery of slope `n`. On failure the
/// trace records the rank argument that rules the Legendrian out.
pub fn check_tb_bound(n: u32, tb_observed: i64) -> TbBoundCheck {
    if tb_observed <= n as i64 {
        return TbBoundCheck { holds: true, trace: None };
    }
    let order = |k: i64| homology(&IntMatrix::diag(&[-k])).order().and_then(|o| o.to_u64()).expect("finite");
    let (small, big) = (order(n as i64), order(n as i64 + 1));
    // HF(S^3) -> HF(S^3_{-n-1}) -> HF(S^3_{-n}), middle rank bounded by |H_1|
    let triangle = TriangleRanks::new(1, big, small).expect("consistent ranks");
    let images = image_ranks(triangle).expect("consistent ranks");
    TbBoundCheck { holds: false, trace: Some(TbTrace { h1_orders: (small, big), triangle, images }) }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictReport {
    pub verdict: Verdict,
    pub reasons: Vec<Reason>,
    pub contradiction: bool,
    pub tb_trace: Option<TbTrace>,
    pub diagram: String,
}

impl VerdictReport {
    pub fn fired(&self, id: &str) -> bool {
        self.reasons.iter().any(|r| r.rule_id == id)
    }
}

pub fn evaluate(d: &ContactSurgeryDiagram, facts: &FactStore) -> VerdictReport {
    evaluate_with(d, facts, &Fig1Template::default())
}

pub fn evaluate_with(d: &ContactSurgeryDiagram, facts: &FactStore, template: &Fig1Template) -> VerdictReport {
    let mut reasons = Vec::new();
    let mut push = |id: &'static str, component: Option<usize>, witness: String| {
        let r = rule(id);
        reasons.push(Reason { rule_id: r.id, citation: r.citation, component, witness });
    };
    let single_plus = d.size() == 1 && d.coefficients[0] == Coefficient::Plus;
    let f0 = facts.get(0);
    let mut tb_trace = None;

    // (1) overtwisted
    if single_plus {
        if let Some(w) = has_fig1_config(&d.front, 0, template) {
            push("ot.fig1", Some(0), format!("events {:?}, cusps between U and U' {}", w.event_indices, w.parity_data.unwrap_or(0)));
        }
    }
    let zigzags = find_zigzags(&d.front.word).expect("diagram front is valid");
    for c in 0..d.size() {
        if d.coefficients[c] != Coefficient::Plus {
            continue;
        }
        if let Some(z) = zigzags.iter().find(|z| z.component == c) {
            let id = if d.size() == 1 { "ot.zigzag-knot" } else { "ot.zigzag-link" };
            push(id, Some(c), format!("zig-zag at events {:?}", z.event_indices));
        }
    }
    if single_plus && f0.is_negative_torus() {
        push("ot.negative-torus", Some(0), format!("declared smooth type `{}`", f0.smooth_type.clone().unwrap_or_default()));
    }

    // (2) tb bound
    for c in 0..d.size() {
        if let Some(n) = facts.get(c).l_space_slope {
            let tb = d.front.tb(c);
            let check = check_tb_bound(n, tb);
            if let Some(t) = check.trace {
                push("bound.tb-lspace", Some(c), format!("tb {tb} > n {n}; triangle {:?} forces images {:?}", (t.triangle.a, t.triangle.b, t.triangle.c), t.images.tuple()));
                tb_trace.get_or_insert(t);
            }
        }
    }

    // (3), (4) vanishing
    if single_plus {
        let tb = d.front.tb(0);
        if let Some((alt_tb, alt_rot)) = f0.alt_representative {
            if alt_tb > tb {
                push("vanish.chat-higher-tb", Some(0), format!("tb {tb} < {alt_tb} of representative with rot {alt_rot}"));
            }
        }
        if tb <= -2 {
            push("vanish.cplus-low-tb", Some(0), format!("tb {tb}"));
        }
    }

    // (5) tight
    if d.coefficients.iter().all(|&k| k == Coefficient::Minus) {
        push("tight.legendrian-surgery", None, format!("{} components, all -1", d.size()));
    }
    if single_plus {
        if let Some(g) = f0.slice_genus {
            let tb = d.front.tb(0);
            if tb == 2 * g as i64 - 1 {
                push("tight.slice-genus", Some(0), format!("tb {tb} = 2*{g} - 1"));
            }
        }
    }

    let verdict = reasons.iter().map(|r| rule(r.rule_id).verdict).min().unwrap_or(Verdict::Unknown);
    let tight = reasons.iter().any(|r| rule(r.rule_id).verdict == Verdict::Tight);
    let non_tight = reasons.iter().any(|r| {
        matches!(rule(r.rule_id).verdict, Verdict::Overtwisted | Verdict::ChatVanishes | Verdict::CplusVanishes)
    });
    VerdictReport {
        verdict,
        reasons,
        contradiction: tight && non_tight,
        tb_trace,
        diagram: format!("{}: {}", d.name, d.front.word),
    }
}
