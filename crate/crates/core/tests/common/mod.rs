//! Independent oracles shared by integration tests.
#![allow(dead_code)]

use legkit::front::{Event, FrontWord};

/// Deterministic valid word from a list of choices.
pub fn word_from_choices(choices: &[(u8, u8)], max_strands: usize) -> FrontWord {
    let mut ev = Vec::new();
    let mut s = 0usize;
    for &(kind, x) in choices {
        let x = x as usize;
        let kind = if s < 2 { 0 } else if s >= max_strands { 1 + kind % 2 } else { kind % 3 };
        match kind {
            0 => {
                ev.push(Event::Lcusp(x % (s + 1) + 1));
                s += 2;
            }
            1 => {
                ev.push(Event::Rcusp(x % (s - 1) + 1));
                s -= 2;
            }
            _ => ev.push(Event::Cross(x % (s - 1) + 1)),
        }
    }
    while s > 0 {
        ev.push(Event::Rcusp(1));
        s -= 2;
    }
    FrontWord::new(ev)
}

pub struct OStrand {
    pub birth: usize,
    pub death: usize,
    pub birth_upper: bool,
    pub death_upper: bool,
    /// (event, strand is over)
    pub passes: Vec<(usize, bool)>,
}

pub struct Trace {
    pub strands: Vec<OStrand>,
    pub comp: Vec<usize>,
    pub ncomp: usize,
    /// right-cusp partner per strand
    pub rmate: Vec<usize>,
    /// strand id of the first left cusp's upper branch per component
    pub first: Vec<usize>,
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let n = p[y];
        p[y] = r;
        y = n;
    }
    r
}

/// Strand tracing by brute simulation with union-find components.
pub fn trace(w: &FrontWord) -> Trace {
    let mut col: Vec<usize> = Vec::new();
    let mut strands: Vec<OStrand> = Vec::new();
    let mut rmate = Vec::new();
    for (i, e) in w.events.iter().enumerate() {
        match *e {
            Event::Lcusp(p) => {
                let id = strands.len();
                strands.push(OStrand { birth: i, death: 0, birth_upper: true, death_upper: false, passes: vec![] });
                strands.push(OStrand { birth: i, death: 0, birth_upper: false, death_upper: false, passes: vec![] });
                rmate.extend([0, 0]);
                col.insert(p - 1, id + 1);
                col.insert(p - 1, id);
            }
            Event::Rcusp(p) => {
                let b = col.remove(p);
                let a = col.remove(p - 1);
                strands[a].death = i;
                strands[a].death_upper = true;
                strands[b].death = i;
                rmate[a] = b;
                rmate[b] = a;
            }
            Event::Cross(p) => {
                let (a, b) = (col[p - 1], col[p]);
                strands[a].passes.push((i, true));
                strands[b].passes.push((i, false));
                col[p - 1] = b;
                col[p] = a;
            }
        }
    }
    assert!(col.is_empty());
    let n = strands.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for s in 0..n {
        let a = find(&mut parent, s);
        let b = find(&mut parent, s ^ 1);
        parent[a] = b;
        let a = find(&mut parent, s);
        let b = find(&mut parent, rmate[s]);
        parent[a] = b;
    }
    let mut comp = vec![usize::MAX; n];
    let mut roots: Vec<usize> = Vec::new();
    let mut first = Vec::new();
    for s in 0..n {
        let r = find(&mut parent, s);
        let c = match roots.iter().position(|&x| x == r) {
            Some(c) => c,
            None => {
                roots.push(r);
                first.push(s);
                roots.len() - 1
            }
        };
        comp[s] = c;
    }
    Trace { strands, comp, ncomp: roots.len(), rmate, first }
}

/// Walk of component `c` from its first strand heading right:
/// (strand, heading right).
pub fn walk(t: &Trace, c: usize) -> Vec<(usize, bool)> {
    let start = t.first[c];
    let mut out = Vec::new();
    let mut s = start;
    let mut right = true;
    loop {
        out.push((s, right));
        s = if right { t.rmate[s] } else { s ^ 1 };
        right = !right;
        if s == start {
            return out;
        }
    }
}

/// Classical invariants (tb, rot) of every component with default orientation.
pub fn classical(w: &FrontWord) -> Vec<(i64, i64)> {
    let t = trace(w);
    let mut dir = vec![true; t.strands.len()];
    for c in 0..t.ncomp {
        for (s, r) in walk(&t, c) {
            dir[s] = r;
        }
    }
    let mut writhe = vec![0i64; t.ncomp];
    for (i, e) in w.events.iter().enumerate() {
        if let Event::Cross(_) = e {
            let pair: Vec<usize> = (0..t.strands.len()).filter(|&s| t.strands[s].passes.iter().any(|p| p.0 == i)).collect();
            let (a, b) = (pair[0], pair[1]);
            if t.comp[a] == t.comp[b] {
                writhe[t.comp[a]] += if dir[a] == dir[b] { 1 } else { -1 };
            }
        }
    }
    (0..t.ncomp)
        .map(|c| {
            let path = walk(&t, c);
            let cusps = path.len() as i64;
            let mut rot2 = 0;
            for &(s, right) in &path {
                let st = &t.strands[s];
                let upper = if right { st.death_upper } else { st.birth_upper };
                rot2 += if upper { 1 } else { -1 };
            }
            (writhe[c] - cusps / 2, rot2 / 2)
        })
        .collect()
}

type Poly = Vec<i128>;

fn padd(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect()
}

fn pmul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Determinant of a polynomial matrix by row expansion over column subsets.
pub fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let mut dp: Vec<Poly> = vec![vec![]; 1 << n];
    dp[0] = vec![1];
    for mask in 0usize..(1 << n) {
        if dp[mask].is_empty() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for col in 0..n {
            if mask & (1 << col) != 0 {
                continue;
            }
            // sign of placing `col` after the columns already used
            let above = (mask >> col).count_ones();
            let mut term = pmul(&dp[mask], &m[row][col]);
            if above % 2 == 1 {
                term.iter_mut().for_each(|x| *x = -*x);
            }
            let next = mask | (1 << col);
            dp[next] = padd(&dp[next], &term);
        }
    }
    dp[(1 << n) - 1].clone()
}

pub fn int_det(m: &[Vec<i64>]) -> i128 {
    let pm: Vec<Vec<Poly>> = m.iter().map(|r| r.iter().map(|&x| vec![x as i128]).collect()).collect();
    poly_det(&pm).first().copied().unwrap_or(0)
}

/// Alexander polynomial of a one-component front from Fox calculus on the
/// Wirtinger presentation; coefficients from lowest degree with a positive top.
pub fn fox_alexander(w: &FrontWord) -> Vec<i128> {
    let t = trace(w);
    assert_eq!(t.ncomp, 1, "knot expected");
    let path = walk(&t, 0);
    let mut dir = vec![true; t.strands.len()];
    for &(s, r) in &path {
        dir[s] = r;
    }
    // passages in travel order
    let mut passes: Vec<(usize, bool)> = Vec::new();
    for &(s, right) in &path {
        let mut p = t.strands[s].passes.clone();
        if !right {
            p.reverse();
        }
        passes.extend(p);
    }
    let crossings: Vec<usize> = {
        let mut c: Vec<usize> = passes.iter().map(|p| p.0).collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    let nc = crossings.len();
    if nc == 0 {
        return vec![1];
    }
    let unders: Vec<usize> = (0..passes.len()).filter(|&i| !passes[i].1).collect();
    // arc k runs from under-passage k to under-passage k+1
    let arc_at = |i: usize| -> usize {
        match unders.iter().rposition(|&u| u <= i) {
            Some(k) => k,
            None => nc - 1,
        }
    };
    let mut rows: Vec<Vec<Poly>> = vec![vec![vec![]; nc]; nc];
    for (r, &e) in crossings.iter().enumerate() {
        let over_i = passes.iter().position(|p| p.0 == e && p.1).unwrap();
        let under_i = passes.iter().position(|p| p.0 == e && !p.1).unwrap();
        let over = arc_at(over_i);
        let k = unders.iter().position(|&u| u == under_i).unwrap();
        let out_arc = k;
        let in_arc = (k + nc - 1) % nc;
        let strands_at: Vec<usize> = (0..t.strands.len()).filter(|&s| t.strands[s].passes.iter().any(|p| p.0 == e)).collect();
        let positive = dir[strands_at[0]] == dir[strands_at[1]];
        let add = |rows: &mut Vec<Vec<Poly>>, c: usize, p: Poly| {
            rows[r][c] = padd(&rows[r][c], &p);
        };
        add(&mut rows, over, vec![1, -1]);
        if positive {
            add(&mut rows, in_arc, vec![0, 1]);
            add(&mut rows, out_arc, vec![-1]);
        } else {
            add(&mut rows, out_arc, vec![0, 1]);
            add(&mut rows, in_arc, vec![-1]);
        }
    }
    let minor: Vec<Vec<Poly>> = rows[1..].iter().map(|r| r[1..].to_vec()).collect();
    let mut p = poly_det(&minor);
    while p.last() == Some(&0) {
        p.pop();
    }
    while p.first() == Some(&0) {
        p.remove(0);
    }
    if p.last().is_some_and(|&x| x < 0) {
        p.iter_mut().for_each(|x| *x = -*x);
    }
    p
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Invariant factors from gcds of all k x k minors.
pub fn determinantal_factors(m: &[Vec<i64>]) -> Vec<i128> {
    let n = m.len();
    let mut d_prev = 1i128;
    let mut out = Vec::new();
    for k in 1..=n {
        let mut g = 0i128;
        for rows in 0u32..(1 << n) {
            if rows.count_ones() as usize != k {
                continue;
            }
            for cols in 0u32..(1 << n) {
                if cols.count_ones() as usize != k {
                    continue;
                }
                let sub: Vec<Vec<i64>> = (0..n)
                    .filter(|i| rows & (1 << i) != 0)
                    .map(|i| (0..n).filter(|j| cols & (1 << j) != 0).map(|j| m[i][j]).collect())
                    .collect();
                g = gcd(g, int_det(&sub));
            }
        }
        if g == 0 {
            out.extend(std::iter::repeat(0).take(n - k + 1));
            return out;
        }
        out.push(g / d_prev);
        d_prev = g;
    }
    out
}

/// Diagram on a word from `word_from_choices`; `signs` cycles over components.
pub fn diagram_from(choices: &[(u8, u8)], max_strands: usize, signs: &[bool]) -> legkit::surgery::ContactSurgeryDiagram {
    use legkit::surgery::{Coefficient, ContactSurgeryDiagram};
    let w = word_from_choices(choices, max_strands);
    let n = legkit::front::validate(&w).unwrap().component_count();
    let k = (0..n).map(|i| if signs[i % signs.len()] { Coefficient::Plus } else { Coefficient::Minus }).collect();
    ContactSurgeryDiagram::from_word(&w, k).unwrap()
}
