mod common;

use common::{classical, trace, word_from_choices};
use legkit::detect::{cusps_between, find_zigzags, has_fig1_config, stabilized_components, Fig1Template};
use legkit::front::{
    orient, parse_front, print_front, pushoff, stabilize, validate, Event, FrontFile, FrontWord, StabSign,
};
use legkit::{catalog, seifert};
use proptest::prelude::*;

fn words(max_len: usize) -> impl Strategy<Value = FrontWord> {
    prop::collection::vec((any::<u8>(), any::<u8>()), 0..max_len).prop_map(|c| word_from_choices(&c, 8))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trace_oracle_agrees(w in words(30)) {
        let map = validate(&w).unwrap();
        let t = trace(&w);
        prop_assert_eq!(map.component_count(), t.ncomp);
        let f = orient(&w, &[]).unwrap();
        let got: Vec<(i64, i64)> = (0..t.ncomp).map(|c| (f.tb(c), f.rot(c))).collect();
        prop_assert_eq!(got, classical(&w));
        let l = w.events.iter().filter(|e| matches!(e, Event::Lcusp(_))).count();
        let r = w.events.iter().filter(|e| matches!(e, Event::Rcusp(_))).count();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn reversal(w in words(30), pick in any::<usize>()) {
        let f = orient(&w, &[]).unwrap();
        prop_assume!(f.component_count() > 0);
        let c = pick % f.component_count();
        let g = f.reversed(c);
        for k in 0..f.component_count() {
            prop_assert_eq!(f.tb(k), g.tb(k));
            let want = if k == c { -f.rot(k) } else { f.rot(k) };
            prop_assert_eq!(g.rot(k), want);
            let (up, down) = f.cusp_counts(k).unwrap();
            prop_assert_eq!((up + down) % 2, 0);
        }
        // cusp-turning rule
        for e in 0..w.len() {
            if w.events[e].is_cusp() {
                let (a, b) = f.map.event_strands[e];
                prop_assert_ne!(f.directions[a], f.directions[b]);
            }
        }
    }

    #[test]
    fn stabilization_law(w in words(30), pick in any::<usize>(), plus in any::<bool>()) {
        let f = orient(&w, &[]).unwrap();
        prop_assume!(f.component_count() > 0);
        let c = pick % f.component_count();
        let sign = if plus { StabSign::Plus } else { StabSign::Minus };
        let s = stabilize(&w, c, sign).unwrap();
        let g = orient(&s, &[]).unwrap();
        prop_assert_eq!(g.component_count(), f.component_count());
        prop_assert_eq!(g.tb(c), f.tb(c) - 1);
        prop_assert_eq!(g.rot(c), f.rot(c) + if plus { 1 } else { -1 });
        prop_assert!(stabilized_components(&s).unwrap().contains(&c));
        // the inserted pair sits right after the first left cusp of c
        let e = f.map.strands[f.map.components[c].strands[0]].birth;
        let found = find_zigzags(&s).unwrap();
        prop_assert!(found.iter().any(|z| z.component == c && z.event_indices == vec![e + 1, e + 2]));
    }

    #[test]
    fn pushoff_law(w in words(24), pick in any::<usize>()) {
        let f = orient(&w, &[]).unwrap();
        prop_assume!(f.component_count() > 0);
        let c = pick % f.component_count();
        let p = orient(&pushoff(&w, c).unwrap(), &[]).unwrap();
        prop_assert_eq!(p.component_count(), f.component_count() + 1);
        prop_assert_eq!(p.writhe(Some((c, c + 1))), 2 * f.tb(c));
        prop_assert_eq!(p.tb(c + 1), f.tb(c));
        prop_assert_eq!(p.tb(c), f.tb(c));
        prop_assert_eq!(p.rot(c + 1), f.rot(c));
    }

    #[test]
    fn front_file_round_trip(w in words(40), name in "[a-z][a-z0-9_-]{0,8}") {
        let file = FrontFile { name, word: w, seeds: Default::default() };
        let text = print_front(&file);
        let back = parse_front(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(print_front(&back), text);
    }

    #[test]
    fn fig1_parity_matches_cusp_walk(w in words(30)) {
        let f = orient(&w, &[]).unwrap();
        let t = Fig1Template::default();
        for c in 0..f.component_count() {
            if let Some(hit) = has_fig1_config(&f, c, &t) {
                let n = hit.parity_data.unwrap();
                prop_assert_eq!(n % 2, 1);
                // recount by walking cusps with the opposite orientation
                let (u, v) = f.map.event_strands[hit.event_indices[0]];
                let back = cusps_between(&f.reversed(c), c, v, u);
                prop_assert_eq!(back, n);
                let (up, down) = f.cusp_counts(c).unwrap();
                prop_assert_eq!((up + down - n as i64) % 2, 1);
            }
        }
    }
}

#[test]
fn twist_fronts_match_seifert_alexander() {
    for n in [2usize, 4, 6, 8] {
        let w = catalog::twist_front(n);
        let fox = common::fox_alexander(&w);
        let k = (n / 2) as i64;
        let d = seifert::alexander(&seifert::twist_knot_seifert(k).unwrap()).unwrap();
        let want: Vec<i128> = d.coeffs().values().map(|c| i128::try_from(c).unwrap()).collect();
        assert_eq!(fox, want, "n = {n}");
    }
    assert_eq!(common::fox_alexander(&catalog::right_trefoil()), vec![1, -1, 1]);
    assert_eq!(common::fox_alexander(&catalog::negative_trefoil()), vec![1, -1, 1]);
}

#[test]
fn stabilized_unknot_has_two_zigzags() {
    // both interior strands switch branch between their cusps
    let z = find_zigzags(&catalog::stabilized_unknot()).unwrap();
    assert_eq!(z.len(), 2);
    let t = trace(&catalog::stabilized_unknot());
    let brute = t.strands.iter().filter(|s| s.passes.is_empty() && s.birth_upper != s.death_upper).count();
    assert_eq!(brute, 2);
}

#[test]
fn fig1_even_arc_does_not_fire() {
    let t = Fig1Template::default();
    // same-direction strands at every crossing: cusp count between them is even
    for w in [catalog::right_trefoil(), catalog::twist_front(4), catalog::twist_front(6)] {
        let f = orient(&w, &[]).unwrap();
        assert!(has_fig1_config(&f, 0, &t).is_none());
    }
    let f = orient(&catalog::negative_trefoil(), &[]).unwrap();
    assert!(has_fig1_config(&f, 0, &t).is_some());
}
