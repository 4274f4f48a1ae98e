//! Front projections encoded as left-to-right event words.
//!
//! Positions are 1-based and counted from the top of the column where the
//! event happens. Strands are the arcs between cusps, numbered in birth
//! order: the `k`-th left cusp creates strands `2k` (upper) and `2k+1` (lower).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    Lcusp(usize),
    Rcusp(usize),
    Cross(usize),
}

impl Event {
    pub fn pos(self) -> usize {
        match self {
            Event::Lcusp(p) | Event::Rcusp(p) | Event::Cross(p) => p,
        }
    }

    pub fn is_cusp(self) -> bool {
        !matches!(self, Event::Cross(_))
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Lcusp(p) => write!(f, "L{p}"),
            Event::Rcusp(p) => write!(f, "R{p}"),
            Event::Cross(p) => write!(f, "X{p}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FrontWord {
    pub events: Vec<Event>,
}

impl FrontWord {
    pub fn new(events: Vec<Event>) -> Self {
        FrontWord { events }
    }

    /// Parses a bare token list such as `"L1 L2 R3 R1"`.
    pub fn from_tokens(s: &str) -> Result<Self, FrontError> {
        let events = s
            .split_whitespace()
            .map(|t| parse_token(t).ok_or_else(|| FrontError::Syntax { line: 1, msg: format!("bad token `{t}`") }))
            .collect::<Result<Vec<_>, _>>()?;
        let w = FrontWord { events };
        check_ranges(&w)?;
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

impl fmt::Display for FrontWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.events.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FrontError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("event {index} ({event}) is out of range with {strands} strands present")]
    UnderflowAtEvent { index: usize, event: Event, strands: usize },
    #[error("{0} strands are still open at the end of the word")]
    OpenStrands(usize),
    #[error("unknown component {0}")]
    UnknownComponent(usize),
    #[error("component {0} has more than one orientation seed")]
    InconsistentSeed(usize),
}

pub(crate) fn parse_token(t: &str) -> Option<Event> {
    let (kind, num) = t.split_at(t.char_indices().nth(1)?.0);
    if num.starts_with('+') {
        return None;
    }
    let p: usize = num.parse().ok()?;
    if p == 0 {
        return None;
    }
    match kind {
        "L" => Some(Event::Lcusp(p)),
        "R" => Some(Event::Rcusp(p)),
        "X" => Some(Event::Cross(p)),
        _ => None,
    }
}

/// Range check of every event; catches the first offending index.
fn check_ranges(w: &FrontWord) -> Result<usize, FrontError> {
    let mut s = 0usize;
    for (index, &event) in w.events.iter().enumerate() {
        let ok = match event {
            Event::Lcusp(p) => p >= 1 && p <= s + 1,
            Event::Rcusp(p) | Event::Cross(p) => p >= 1 && p + 1 <= s,
        };
        if !ok {
            return Err(FrontError::UnderflowAtEvent { index, event, strands: s });
        }
        match event {
            Event::Lcusp(_) => s += 2,
            Event::Rcusp(_) => s -= 2,
            Event::Cross(_) => {}
        }
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Right,
    Left,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Right => Direction::Left,
            Direction::Left => Direction::Right,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Right => "right",
            Direction::Left => "left",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub birth: usize,
    pub death: usize,
    /// upper branch of its left cusp
    pub birth_upper: bool,
    /// upper branch of its right cusp
    pub death_upper: bool,
    /// crossing events touching this strand, left to right
    pub crossings: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// strands in traversal order starting from the first-born strand
    pub strands: Vec<usize>,
    /// event indices touching the component, ascending
    pub events: Vec<usize>,
}

/// Result of tracing a valid word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentMap {
    pub strands: Vec<Strand>,
    /// per event: (upper, lower) strand just before the event (after, for a left cusp)
    pub event_strands: Vec<(usize, usize)>,
    pub component_of: Vec<usize>,
    pub components: Vec<Component>,
}

impl ComponentMap {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Crossing event indices with both strands on `c`.
    pub fn self_crossings(&self, w: &FrontWord, c: usize) -> Vec<usize> {
        self.components[c]
            .events
            .iter()
            .copied()
            .filter(|&e| {
                let (a, b) = self.event_strands[e];
                matches!(w.events[e], Event::Cross(_))
                    && self.component_of[a] == c
                    && self.component_of[b] == c
            })
            .collect()
    }
}

pub fn validate(w: &FrontWord) -> Result<ComponentMap, FrontError> {
    let open = check_ranges(w)?;
    if open != 0 {
        return Err(FrontError::OpenStrands(open));
    }
    let mut col: Vec<usize> = Vec::new();
    let mut strands: Vec<Strand> = Vec::new();
    let mut event_strands = Vec::with_capacity(w.len());
    for (i, &e) in w.events.iter().enumerate() {
        match e {
            Event::Lcusp(p) => {
                let up = strands.len();
                for upper in [true, false] {
                    strands.push(Strand {
                        birth: i,
                        death: usize::MAX,
                        birth_upper: upper,
                        death_upper: false,
                        crossings: Vec::new(),
                    });
                }
                col.splice(p - 1..p - 1, [up, up + 1]);
                event_strands.push((up, up + 1));
            }
            Event::Rcusp(p) => {
                let (a, b) = (col[p - 1], col[p]);
                strands[a].death = i;
                strands[a].death_upper = true;
                strands[b].death = i;
                col.drain(p - 1..=p);
                event_strands.push((a, b));
            }
            Event::Cross(p) => {
                let (a, b) = (col[p - 1], col[p]);
                strands[a].crossings.push(i);
                strands[b].crossings.push(i);
                col.swap(p - 1, p);
                event_strands.push((a, b));
            }
        }
    }

    // left-cusp partners are (2k, 2k+1); right-cusp partners from events
    let mut rpartner = vec![0usize; strands.len()];
    for (i, &e) in w.events.iter().enumerate() {
        if let Event::Rcusp(_) = e {
            let (a, b) = event_strands[i];
            rpartner[a] = b;
            rpartner[b] = a;
        }
    }
    let mut component_of = vec![usize::MAX; strands.len()];
    let mut components = Vec::new();
    for seed in 0..strands.len() {
        if component_of[seed] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut order = Vec::new();
        let mut s = seed;
        let mut rightward = true;
        loop {
            component_of[s] = id;
            order.push(s);
            s = if rightward { rpartner[s] } else { s ^ 1 };
            rightward = !rightward;
            if s == seed {
                break;
            }
        }
        let mut events: Vec<usize> = order
            .iter()
            .flat_map(|&s| {
                let st = &strands[s];
                [st.birth, st.death].into_iter().chain(st.crossings.iter().copied())
            })
            .collect();
        events.sort_unstable();
        events.dedup();
        components.push(Component { strands: order, events });
    }
    Ok(ComponentMap { strands, event_strands, component_of, components })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedFront {
    pub word: FrontWord,
    pub map: ComponentMap,
    pub directions: Vec<Direction>,
}

/// Orients each component; components without a seed point rightward on
/// their first-born strand.
pub fn orient(w: &FrontWord, seeds: &[(usize, Direction)]) -> Result<OrientedFront, FrontError> {
    let map = validate(w)?;
    let mut chosen = vec![None; map.component_count()];
    for &(c, d) in seeds {
        let slot = chosen.get_mut(c).ok_or(FrontError::UnknownComponent(c))?;
        if slot.is_some() {
            return Err(FrontError::InconsistentSeed(c));
        }
        *slot = Some(d);
    }
    let mut directions = vec![Direction::Right; map.strands.len()];
    for (c, comp) in map.components.iter().enumerate() {
        let mut d = chosen[c].unwrap_or(Direction::Right);
        for &s in &comp.strands {
            directions[s] = d;
            d = d.flip();
        }
    }
    Ok(OrientedFront { word: w.clone(), map, directions })
}

impl OrientedFront {
    pub fn component_count(&self) -> usize {
        self.map.component_count()
    }

    pub fn seed(&self, c: usize) -> Direction {
        self.directions[self.map.components[c].strands[0]]
    }

    pub fn reversed(&self, c: usize) -> OrientedFront {
        let mut out = self.clone();
        for &s in &self.map.components[c].strands {
            out.directions[s] = out.directions[s].flip();
        }
        out
    }

    pub fn crossing_sign(&self, e: usize) -> i64 {
        let (a, b) = self.map.event_strands[e];
        if self.directions[a] == self.directions[b] {
            1
        } else {
            -1
        }
    }

    /// Sum of crossing signs; with `Some((a, b))` only crossings between
    /// components `a` and `b` (self-crossings when `a == b`).
    pub fn writhe(&self, restrict: Option<(usize, usize)>) -> i64 {
        self.word
            .events
            .iter()
            .enumerate()
            .filter(|(_, e)| matches!(e, Event::Cross(_)))
            .filter(|&(i, _)| match restrict {
                None => true,
                Some((x, y)) => {
                    let (a, b) = self.map.event_strands[i];
                    let (ca, cb) = (self.map.component_of[a], self.map.component_of[b]);
                    (ca, cb) == (x, y) || (ca, cb) == (y, x)
                }
            })
            .map(|(i, _)| self.crossing_sign(i))
            .sum()
    }

    pub fn linking(&self, a: usize, b: usize) -> i64 {
        self.writhe(Some((a, b))) / 2
    }

    /// Cusps passed downward and upward while traversing `c`.
    pub fn cusp_counts(&self, c: usize) -> Result<(i64, i64), FrontError> {
        let comp = self.map.components.get(c).ok_or(FrontError::UnknownComponent(c))?;
        let (mut up, mut down) = (0, 0);
        for &s in &comp.strands {
            let st = &self.map.strands[s];
            // a strand ends at its right cusp when heading right, else at its left cusp
            let upper = match self.directions[s] {
                Direction::Right => st.death_upper,
                Direction::Left => st.birth_upper,
            };
            if upper {
                down += 1;
            } else {
                up += 1;
            }
        }
        Ok((up, down))
    }

    pub fn tb(&self, c: usize) -> i64 {
        let cusps = self.map.components[c].strands.len() as i64;
        self.writhe(Some((c, c))) - cusps / 2
    }

    pub fn rot(&self, c: usize) -> i64 {
        let (up, down) = self.cusp_counts(c).expect("component in range");
        (down - up) / 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabSign {
    /// raises rot by one under the default orientation
    Plus,
    Minus,
}

/// Inserts a zig-zag on `c` next to its first left cusp, on the
/// first-born strand.
pub fn stabilize(w: &FrontWord, c: usize, sign: StabSign) -> Result<FrontWord, FrontError> {
    let map = validate(w)?;
    let comp = map.components.get(c).ok_or(FrontError::UnknownComponent(c))?;
    let e = map.strands[comp.strands[0]].birth;
    let p = w.events[e].pos();
    let pair = match sign {
        StabSign::Plus => [Event::Lcusp(p + 1), Event::Rcusp(p)],
        StabSign::Minus => [Event::Lcusp(p), Event::Rcusp(p + 1)],
    };
    let mut events = w.events.clone();
    events.splice(e + 1..e + 1, pair);
    Ok(FrontWord { events })
}

/// Adds a Legendrian push-off of component `c`, drawn just above each of
/// its strands. The copy becomes component `c + 1`.
pub fn pushoff(w: &FrontWord, c: usize) -> Result<FrontWord, FrontError> {
    let map = validate(w)?;
    if c >= map.component_count() {
        return Err(FrontError::UnknownComponent(c));
    }
    let on_c = |s: usize| map.component_of[s] == c;
    let mut col: Vec<usize> = Vec::new();
    let mut out = Vec::with_capacity(w.len() * 2);
    let mut born = 0usize;
    for (i, &e) in w.events.iter().enumerate() {
        let p = e.pos();
        let shift = col[..(p - 1).min(col.len())].iter().filter(|&&s| on_c(s)).count();
        let q = p + shift;
        let (a, b) = map.event_strands[i];
        match e {
            Event::Lcusp(_) => {
                col.splice(p - 1..p - 1, [born, born + 1]);
                born += 2;
                if on_c(a) {
                    out.extend([Event::Lcusp(q), Event::Lcusp(q), Event::Cross(q + 1)]);
                } else {
                    out.push(Event::Lcusp(q));
                }
            }
            Event::Rcusp(_) => {
                col.drain(p - 1..=p);
                if on_c(a) {
                    out.extend([Event::Cross(q + 1), Event::Rcusp(q), Event::Rcusp(q)]);
                } else {
                    out.push(Event::Rcusp(q));
                }
            }
            Event::Cross(_) => {
                col.swap(p - 1, p);
                let seq: &[usize] = match (on_c(a), on_c(b)) {
                    (true, true) => &[1, 0, 2, 1],
                    (true, false) => &[1, 0],
                    (false, true) => &[0, 1],
                    (false, false) => &[0],
                };
                out.extend(seq.iter().map(|&d| Event::Cross(q + d)));
            }
        }
    }
    Ok(FrontWord { events: out })
}

/// Erase component `c`; the others keep their relative order.
pub fn delete_component(w: &FrontWord, c: usize) -> Result<FrontWord, FrontError> {
    let map = validate(w)?;
    if c >= map.component_count() {
        return Err(FrontError::UnknownComponent(c));
    }
    let on_c = |s: usize| map.component_of[s] == c;
    let mut col: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    let mut born = 0usize;
    for (i, &e) in w.events.iter().enumerate() {
        let p = e.pos();
        let q = p - col[..(p - 1).min(col.len())].iter().filter(|&&s| on_c(s)).count();
        let (a, b) = map.event_strands[i];
        match e {
            Event::Lcusp(_) => {
                col.splice(p - 1..p - 1, [born, born + 1]);
                born += 2;
                if !on_c(a) {
                    out.push(Event::Lcusp(q));
                }
            }
            Event::Rcusp(_) => {
                col.drain(p - 1..=p);
                if !on_c(a) {
                    out.push(Event::Rcusp(q));
                }
            }
            Event::Cross(_) => {
                col.swap(p - 1, p);
                if !on_c(a) && !on_c(b) {
                    out.push(Event::Cross(q));
                }
            }
        }
    }
    Ok(FrontWord { events: out })
}

/// A front file: name, word and orientation seeds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontFile {
    pub name: String,
    pub word: FrontWord,
    pub seeds: BTreeMap<usize, Direction>,
}

impl FrontFile {
    pub fn oriented(&self) -> Result<OrientedFront, FrontError> {
        let seeds: Vec<_> = self.seeds.iter().map(|(&c, &d)| (c, d)).collect();
        orient(&self.word, &seeds)
    }
}

pub const TOKENS_PER_LINE: usize = 16;

pub(crate) fn print_events(out: &mut String, w: &FrontWord) {
    for chunk in w.events.chunks(TOKENS_PER_LINE) {
        let line: Vec<String> = chunk.iter().map(|e| e.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
}

pub fn print_front(f: &FrontFile) -> String {
    let mut out = format!("front {}\n", f.name);
    print_events(&mut out, &f.word);
    for (c, d) in &f.seeds {
        out.push_str(&format!("orient {c} {d}\n"));
    }
    out.push_str("end\n");
    out
}

pub fn parse_front(text: &str) -> Result<FrontFile, FrontError> {
    let mut parser = LineParser::new(text)?;
    while let Some((line, toks)) = parser.next_line()? {
        if !parser.common(line, &toks)? {
            return Err(FrontError::Syntax { line, msg: format!("unexpected `{}`", toks[0]) });
        }
    }
    parser.finish()
}

/// Shared line scanner for front and diagram files.
pub(crate) struct LineParser<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
    pub name: String,
    pub events: Vec<Event>,
    pub event_lines: Vec<usize>,
    pub seeds: BTreeMap<usize, Direction>,
    closed: bool,
    last_line: usize,
}

impl<'a> LineParser<'a> {
    pub fn new(text: &'a str) -> Result<Self, FrontError> {
        let mut lines = text.lines().enumerate();
        let mut name = None;
        let mut last_line = 0;
        for (i, raw) in lines.by_ref() {
            last_line = i + 1;
            let toks = tokens(raw);
            if toks.is_empty() {
                continue;
            }
            if toks[0] != "front" || toks.len() != 2 {
                return Err(FrontError::Syntax { line: i + 1, msg: "expected `front <name>`".into() });
            }
            name = Some(toks[1].to_string());
            break;
        }
        let name = name.ok_or(FrontError::Syntax { line: last_line.max(1), msg: "missing `front` header".into() })?;
        Ok(LineParser { lines, name, events: Vec::new(), event_lines: Vec::new(), seeds: BTreeMap::new(), closed: false, last_line })
    }

    pub fn next_line(&mut self) -> Result<Option<(usize, Vec<&'a str>)>, FrontError> {
        for (i, raw) in self.lines.by_ref() {
            self.last_line = i + 1;
            let toks = tokens(raw);
            if toks.is_empty() {
                continue;
            }
            if self.closed {
                return Err(FrontError::Syntax { line: i + 1, msg: "content after `end`".into() });
            }
            if toks == ["end"] {
                self.closed = true;
                continue;
            }
            return Ok(Some((i + 1, toks)));
        }
        Ok(None)
    }

    /// Handles event and `orient` lines; returns false for other keywords.
    pub fn common(&mut self, line: usize, toks: &[&str]) -> Result<bool, FrontError> {
        if toks[0] == "orient" {
            let [_, c, d] = toks else {
                return Err(FrontError::Syntax { line, msg: "expected `orient <component> <left|right>`".into() });
            };
            let c = parse_index(c, line)?;
            let d = match *d {
                "left" => Direction::Left,
                "right" => Direction::Right,
                other => return Err(FrontError::Syntax { line, msg: format!("bad direction `{other}`") }),
            };
            if self.seeds.insert(c, d).is_some() {
                return Err(FrontError::InconsistentSeed(c));
            }
            return Ok(true);
        }
        let first = toks[0].chars().next().unwrap_or(' ');
        if matches!(first, 'L' | 'R' | 'X') && parse_token(toks[0]).is_some() {
            for t in toks {
                let e = parse_token(t).ok_or_else(|| FrontError::Syntax { line, msg: format!("bad token `{t}`") })?;
                self.events.push(e);
                self.event_lines.push(line);
            }
            return Ok(true);
        }
        Ok(false)
    }

    pub fn finish(self) -> Result<FrontFile, FrontError> {
        if !self.closed {
            return Err(FrontError::Syntax { line: self.last_line.max(1), msg: "missing `end`".into() });
        }
        let word = FrontWord { events: self.events };
        check_ranges(&word)?;
        Ok(FrontFile { name: self.name, word, seeds: self.seeds })
    }
}

fn tokens(raw: &str) -> Vec<&str> {
    let body = raw.split('#').next().unwrap_or("");
    body.split_whitespace().collect()
}

pub(crate) fn parse_index(s: &str, line: usize) -> Result<usize, FrontError> {
    s.parse().map_err(|_| FrontError::Syntax { line, msg: format!("bad component index `{s}`") })
}
