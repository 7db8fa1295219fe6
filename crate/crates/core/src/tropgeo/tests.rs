use super::*;
use crate::poly::prevariety_member;
use crate::rat::rat;

fn qq() -> Hyperfield {
    Hyperfield::extension(Hyperfield::rationals(), 1)
}

fn pe(c: i64, g: i64) -> HElem {
    HElem::pair(HElem::int(c), GroupElem::from_int(g))
}

fn poly(terms: &[([i64; 2], i64, i64)]) -> HPoly {
    HPoly::new(
        qq(),
        2,
        terms.iter().map(|(d, c, g)| (d.to_vec(), pe(*c, *g))),
    )
    .unwrap()
}

/// `X ⊞ Y ⊞ (−1, 0)`
fn fine_line() -> HPoly {
    poly(&[([1, 0], 1, 0), ([0, 1], 1, 0), ([0, 0], -1, 0)])
}

/// `(1,1)⊙X ⊞ (1,0)⊙Y ⊞ (1,0)`
fn second_line() -> HPoly {
    poly(&[([1, 0], 1, 1), ([0, 1], 1, 0), ([0, 0], 1, 0)])
}

fn pt(x: i64, y: i64) -> [Rational; 2] {
    [rat(x), rat(y)]
}

fn ray(dir: [i64; 2], start: Option<[Rational; 2]>, end: Option<[Rational; 2]>) -> Locus {
    let p = start.clone().or(end.clone()).expect("anchored ray");
    let offset = rat(-dir[1]) * &p[0] + rat(dir[0]) * &p[1];
    Locus::Edge {
        dir,
        offset,
        start,
        end,
    }
}

fn summary(c: &FineCurve) -> Vec<(Locus, String)> {
    c.cells()
        .iter()
        .map(|cell| (cell.locus.clone(), laurent_text(c.base(), &cell.condition)))
        .collect()
}

#[test]
fn fine_line_has_four_components() {
    let c = fine_hypersurface(&fine_line()).unwrap();
    let got = summary(&c);
    let want = vec![
        (Locus::Point(pt(0, 0)), "c_X + c_Y - 1".to_string()),
        (ray([1, 0], Some(pt(0, 0)), None), "c_Y - 1".to_string()),
        (ray([1, 1], None, Some(pt(0, 0))), "c_X + c_Y".to_string()),
        (ray([0, 1], Some(pt(0, 0)), None), "c_X - 1".to_string()),
    ];
    assert_eq!(got.len(), 4);
    for w in &want {
        assert!(got.contains(w), "missing {w:?} in {got:?}");
    }
}

#[test]
fn second_line_components() {
    let c = fine_hypersurface(&second_line()).unwrap();
    let got = summary(&c);
    for w in [
        (Locus::Point(pt(-1, 0)), "c_X + c_Y + 1"),
        (ray([1, 0], Some(pt(-1, 0)), None), "c_Y + 1"),
        (ray([0, 1], Some(pt(-1, 0)), None), "c_X + 1"),
        (ray([1, 1], None, Some(pt(-1, 0))), "c_X + c_Y"),
    ] {
        assert!(
            got.contains(&(w.0.clone(), w.1.to_string())),
            "missing {w:?}"
        );
    }
    assert_eq!(got.len(), 4);
}

#[test]
fn monomials_have_empty_curves() {
    let c = fine_hypersurface(&poly(&[([1, 0], 3, 2)])).unwrap();
    assert!(c.is_empty());
    assert!(trop_project(&c).cells.is_empty());
}

#[test]
fn projections_are_tropical_lines() {
    assert_eq!(
        trop_project(&fine_hypersurface(&fine_line()).unwrap()).vertices(),
        vec![pt(0, 0)]
    );
    assert_eq!(
        trop_project(&fine_hypersurface(&second_line()).unwrap()).vertices(),
        vec![pt(-1, 0)]
    );
}

#[test]
fn single_fine_intersection_point() {
    let (p, q) = (fine_line(), second_line());
    let fi = fine_intersect(
        &fine_hypersurface(&p).unwrap(),
        &fine_hypersurface(&q).unwrap(),
    )
    .unwrap();
    assert!(fi.components.is_empty());
    assert_eq!(fi.points, vec![[pe(2, 0), pe(-1, 0)]]);
    for x in &fi.points {
        assert!(prevariety_member(&[p.clone(), q.clone()], x).unwrap());
    }
}

#[test]
fn shifted_line_meets_in_a_component() {
    let p1 = poly(&[([1, 0], 1, 0), ([0, 1], 1, 0), ([0, 0], 1, 0)]);
    let fi = fine_intersect(
        &fine_hypersurface(&p1).unwrap(),
        &fine_hypersurface(&second_line()).unwrap(),
    )
    .unwrap();
    assert!(fi.points.is_empty());
    assert_eq!(fi.components.len(), 1);
    let comp = &fi.components[0];
    assert_eq!(comp.locus, ray([1, 0], Some(pt(0, 0)), None));
    match &comp.units {
        TorusPiece::Family { fixed, .. } => assert_eq!(fixed, &[None, Some(HElem::int(-1))]),
        other => panic!("{other:?}"),
    }
}

#[test]
fn disjoint_supports_do_not_meet() {
    // vertical lines g_X = 0 and g_X = −1
    let a = poly(&[([1, 0], 1, 0), ([0, 0], -1, 0)]);
    let b = poly(&[([1, 0], 1, 0), ([0, 0], -1, 1)]);
    let fi = fine_intersect(
        &fine_hypersurface(&a).unwrap(),
        &fine_hypersurface(&b).unwrap(),
    )
    .unwrap();
    assert_eq!(fi, FineIntersection::default());
}

#[test]
fn stable_intersections_are_seed_independent() {
    let line = fine_hypersurface(&fine_line()).unwrap();
    let q = fine_hypersurface(&second_line()).unwrap();
    let shifted =
        fine_hypersurface(&poly(&[([1, 0], 1, 0), ([0, 1], 1, 0), ([0, 0], 1, 0)])).unwrap();
    for seed in 0..10 {
        assert_eq!(stable_intersect(&line, &q, seed).unwrap(), vec![pt(0, 0)]);
        assert_eq!(
            stable_intersect(&shifted, &q, seed).unwrap(),
            vec![pt(0, 0)]
        );
        assert_eq!(
            stable_intersect(&line, &line, seed).unwrap(),
            vec![pt(0, 0)]
        );
    }
}

fn s(terms: &[(i64, i64)]) -> SeriesTrunc {
    SeriesTrunc::from_ints(terms, None)
}

fn series_poly(terms: Vec<([i64; 2], SeriesTrunc)>) -> SeriesPoly {
    SeriesPoly::new(
        FieldKind::Rationals,
        2,
        terms.into_iter().map(|(d, c)| (d.to_vec(), c)),
    )
    .unwrap()
}

fn worked_system() -> [SeriesPoly; 2] {
    [
        series_poly(vec![
            ([1, 0], s(&[(1, 0)])),
            ([0, 1], s(&[(1, 0)])),
            ([0, 0], s(&[(-1, 0)])),
        ]),
        series_poly(vec![
            ([1, 0], s(&[(1, 1)])),
            ([0, 1], s(&[(1, 0), (1, 2)])),
            ([0, 0], s(&[(1, 0)])),
        ]),
    ]
}

#[test]
fn oracle_examples() {
    let [p, q] = worked_system();
    assert_eq!(
        oracle_intersect_series(&p, &q).unwrap(),
        vec![[pe(2, 0), pe(-1, 0)]]
    );
    let a = series_poly(vec![([1, 0], s(&[(1, 0)])), ([0, 0], s(&[(-1, 1)]))]);
    let b = series_poly(vec![([0, 1], s(&[(1, 0)])), ([1, 0], s(&[(-1, 0)]))]);
    assert_eq!(
        oracle_intersect_series(&a, &b).unwrap(),
        vec![[pe(1, 1), pe(1, 1)]]
    );
    let par = series_poly(vec![
        ([1, 0], s(&[(1, 0)])),
        ([0, 1], s(&[(1, 0)])),
        ([0, 0], s(&[(1, 0)])),
    ]);
    assert_eq!(
        oracle_intersect_series(&p, &par),
        Err(Error::NoIsolatedSolution)
    );
}

#[test]
fn oracle_points_lie_on_both_curves() {
    let [p, q] = worked_system();
    let fval = HomDescriptor::fval(FieldKind::Rationals);
    let c1 = fine_hypersurface(&p.pushforward(&fval).unwrap()).unwrap();
    let c2 = fine_hypersurface(&q.pushforward(&fval).unwrap()).unwrap();
    for x in oracle_intersect_series(&p, &q).unwrap() {
        assert!(c1.contains(&x).unwrap() && c2.contains(&x).unwrap());
    }
}

#[test]
fn worked_system_has_one_start_solution() {
    let h = homotopy_start(&worked_system()).unwrap();
    assert_eq!(h.mixed_volume, 1);
    assert_eq!(h.bkk, 1);
    assert_eq!(h.solutions.len(), 1);
    assert_eq!(h.solutions[0].point, [pe(2, 0), pe(-1, 0)]);
}

#[test]
fn zero_mixed_volume_gives_no_start_solutions() {
    let a = series_poly(vec![([1, 0], s(&[(1, 0)])), ([0, 0], s(&[(-1, 0)]))]);
    let b = series_poly(vec![([1, 0], s(&[(1, 0)])), ([0, 0], s(&[(-1, 1)]))]);
    let h = homotopy_start(&[a, b]).unwrap();
    assert_eq!(h.bkk, 0);
    assert!(h.solutions.is_empty());
}

#[test]
fn json_and_svg_dumps() {
    let c = fine_hypersurface(&fine_line()).unwrap();
    let j = c.to_json();
    assert_eq!(j["cells"].as_array().unwrap().len(), 4);
    let svg = svg::fine_curve_svg(&c);
    assert!(svg.starts_with("<svg") && svg.contains("c_X + c_Y - 1 = 0"));
    assert_eq!(
        svg::trop_curve_svg(&trop_project(&c))
            .matches("<line")
            .count(),
        3
    );
}
