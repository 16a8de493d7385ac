use lyapnum::metric::diam_estimate;
use lyapnum::zoo::{
    self, arc_distance, audit, make_doubling_circle, make_full_shift, make_product,
    make_surface_prop51, make_tent, make_three_branch, registry, resolve, FullShift, Product,
    Surface, Tent,
};
use lyapnum::{BinaryExpansion, MetricSystem, Point, SymbolicWord};

fn real(x: f64) -> Point {
    Point::real(&[x]).unwrap()
}

#[test]
fn every_registry_system_passes_the_audit() {
    for spec in registry(100) {
        let problems = audit(&spec, 1000, 17);
        assert!(problems.is_empty(), "{}: {problems:?}", spec.name);
        let scaled = spec.scaled(3.7);
        let problems = audit(&scaled, 300, 18);
        assert!(problems.is_empty(), "{}: {problems:?}", scaled.name);
    }
}

#[test]
fn registry_names() {
    let names: Vec<String> = registry(10).into_iter().map(|s| s.name).collect();
    for n in [
        "three_branch",
        "surface_prop51",
        "tent",
        "doubling",
        "full_shift:2",
    ] {
        assert!(names.iter().any(|m| m == n), "{n} missing from {names:?}");
    }
    assert!(zoo::list(Some("no_such_system")).is_empty());
    assert_eq!(zoo::list(Some("tent")).len(), 2);
}

#[test]
fn resolution_and_rejections() {
    assert_eq!(resolve("rotation:0.25", 10).unwrap().name, "rotation:0.25");
    assert_eq!(resolve("full_shift:3", 10).unwrap().name, "full_shift:3");
    assert_eq!(
        resolve("product:tent,doubling", 10).unwrap().name,
        "product:tent,doubling"
    );
    for bad in [
        "",
        "nope",
        "rotation:x",
        "rotation:nan",
        "full_shift:1",
        "product:tent",
        "product:tent,product:a,b",
    ] {
        assert!(resolve(bad, 10).is_err(), "{bad:?} should not resolve");
    }
    // stored words follow the horizon
    let spec = resolve("full_shift:2", 1000).unwrap();
    assert_eq!(spec.system.max_horizon(), Some(1000));
}

#[test]
fn declared_fixed_points_are_fixed() {
    let tb = make_three_branch();
    let half = real(0.5);
    assert!(tb.system.distance(&tb.system.step(&half), &half) < 1e-12);

    let tent = make_tent();
    let fixed = [
        Point::Binary(BinaryExpansion::periodic(&[0], 4096)),
        Point::Binary(BinaryExpansion::periodic(&[1, 0], 4096)),
    ];
    for p in &fixed {
        assert!(tent.hard_points.contains(p));
        assert!(tent.system.distance(&tent.system.step(p), p) < 1e-12);
    }

    let surface = make_surface_prop51();
    let origin = Surface::point(0.0, 0.0);
    assert_eq!(surface.system.step(&origin), origin);
    for k in 0..8 {
        let p = surface.system.step(&Surface::point(1.0, k as f64 * 0.7));
        assert_eq!(p.as_real().unwrap()[0], 1.0);
    }
}

#[test]
fn small_formula_examples() {
    let tent = Tent::new(128);
    let q = tent.step(&tent.point(0.25).unwrap());
    assert_eq!(tent.embed(&q).as_real().unwrap()[0], 0.5);
    assert!((arc_distance(0.1, 0.9) - 0.2).abs() < 1e-15);

    let tt = make_product(&make_tent(), &make_tent());
    let t = Tent::new(4096);
    let a = Product::pair(t.point(0.0).unwrap(), t.point(0.0).unwrap());
    let b = Product::pair(t.point(1.0).unwrap(), t.point(0.3).unwrap());
    assert_eq!(tt.system.distance(&a, &b), 1.0);

    let dd = make_product(&make_doubling_circle(), &make_doubling_circle());
    assert_eq!(dd.known_diameter(), Some(0.5));
    let sampled = diam_estimate(dd.system.as_ref(), 2000, 3).unwrap();
    assert!((0.49..=0.5).contains(&sampled), "{sampled}");
}

#[test]
fn shift_words() {
    let shift = FullShift::with_length(2, 68, 4).unwrap();
    let w = |s: &[u8]| {
        let mut v = s.to_vec();
        v.resize(68, 0);
        Point::Word(SymbolicWord::new(v, 2).unwrap())
    };
    assert_eq!(shift.distance(&w(&[0, 1, 1, 1]), &w(&[1, 0, 0, 0])), 1.0);
    assert_eq!(shift.distance(&w(&[0, 1, 1, 0]), &w(&[0, 1, 1, 0])), 0.0);
    // the next stored symbol becomes visible after a shift
    let mut v = vec![0, 1, 1, 0];
    v.resize(68, 1);
    let shifted = shift.step(&Point::Word(SymbolicWord::new(v, 2).unwrap()));
    let Point::Word(s) = &shifted else { panic!() };
    assert_eq!(&s.symbols()[..4], &[1, 1, 0, 1]);
    assert_eq!(s.len(), 67);

    let spec = make_full_shift(2, 50).unwrap();
    assert_eq!(spec.hard_points.len(), 2);
    for p in &spec.hard_points {
        let Point::Word(w) = p else { panic!() };
        assert_eq!(w.len(), 50 + zoo::SHIFT_MARGIN);
    }
}
