//! Built-in fronts.

use crate::front::{Event, FrontError, FrontWord, StabSign};

fn word(s: &str) -> FrontWord {
    FrontWord::from_tokens(s).expect("built-in front is valid")
}

pub fn standard_unknot() -> FrontWord {
    word("L1 R1")
}

pub fn stabilized_unknot() -> FrontWord {
    word("L1 L2 R3 R1")
}

/// tb 1, rot 0.
pub fn right_trefoil() -> FrontWord {
    word("L1 L3 X2 X2 X2 R1 R1")
}

/// Left-handed trefoil with tb -6 and rot -1; every crossing is negative.
pub fn negative_trefoil() -> FrontWord {
    word("L1 L1 L3 X2 X4 R3 X2 R1 R1")
}

/// Vertical column of `n` crossings between strands `p` and `p + 1`.
fn column(n: usize, p: usize) -> Vec<Event> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    out.extend(std::iter::repeat(Event::Lcusp(p + 1)).take(n - 1));
    out.extend((0..n).map(|j| Event::Cross(p + 2 * j)));
    out.extend(std::iter::repeat(Event::Rcusp(p + 1)).take(n - 1));
    out
}

/// Twist knot front: a clasp whose band carries a column of `n` crossings.
/// For even `n` it has tb 1, rot 0 and Alexander polynomial
/// `k t^-1 - (2k - 1) + k t` with `k = n / 2`.
pub fn twist_front(n: usize) -> FrontWord {
    let mut ev = vec![Event::Lcusp(1), Event::Lcusp(3), Event::Cross(2)];
    ev.extend(column(n, 1));
    ev.extend([Event::Cross(2), Event::Rcusp(1), Event::Rcusp(1)]);
    FrontWord::new(ev)
}

/// Member `i` of the Chekanov-Eliashberg family with `n` twists. Every
/// member is drawn with the same front, so `i` is only range-checked.
pub fn chekanov_eliashberg(n: usize, i: usize) -> Result<FrontWord, String> {
    if n < 2 || n % 2 != 0 {
        return Err(format!("n = {n} must be even and at least 2"));
    }
    if i == 0 || i >= n {
        return Err(format!("i = {i} must lie in 1..{n}"));
    }
    Ok(twist_front(n))
}

/// Unknot with tb `-(n - 1)` and rotation `r`; contact -1 on it presents `L(n, 1)`.
pub fn lens_space_unknot(n: usize, r: i64) -> Result<FrontWord, FrontError> {
    let s = n as i64 - 2;
    assert!(s >= 0 && r.abs() <= s && (s + r) % 2 == 0, "rotation within range");
    let plus = (s + r) / 2;
    let mut w = standard_unknot();
    for j in 0..s {
        let sign = if j < plus { StabSign::Plus } else { StabSign::Minus };
        w = crate::front::stabilize(&w, 0, sign)?;
    }
    Ok(w)
}

pub fn by_name(name: &str) -> Option<FrontWord> {
    match name {
        "unknot" => Some(standard_unknot()),
        "stabilized-unknot" => Some(stabilized_unknot()),
        "right-trefoil" => Some(right_trefoil()),
        "negative-trefoil" => Some(negative_trefoil()),
        _ => {
            let n = name.strip_prefix("twist-")?.parse().ok()?;
            Some(twist_front(n))
        }
    }
}
