use lattice_dec::{check_all, random_form, FormZn, LatticeBox, LatticePath, Rectangle};
use proptest::prelude::*;

/// Rectangle with sides `la x lb` in the (0, 1) plane of an N = 10 box, and
/// a window around its boundary where random forms are drawn.
fn setting(m: usize, la: u32, lb: u32) -> (LatticeBox, Rectangle, LatticeBox) {
    let bx = LatticeBox::centered(m, 10).unwrap();
    let mut corner = vec![0i64; m];
    corner[0] = -(la as i64) / 2;
    corner[1] = -(lb as i64) / 2;
    let r = Rectangle::new(corner.clone(), [0, 1], [la, lb], 1).unwrap();
    let mut lo = vec![-1i64; m];
    let mut hi = vec![1i64; m];
    lo[0] = corner[0] - 2;
    lo[1] = corner[1] - 2;
    hi[0] = corner[0] + la as i64 + 2;
    hi[1] = corner[1] + lb as i64 + 2;
    (bx, r, LatticeBox::new(lo, hi).unwrap())
}

fn assert_all_hold(w: &FormZn, gamma: &LatticePath, bx: &LatticeBox) -> Result<(), TestCaseError> {
    for c in check_all(w, gamma, bx).unwrap() {
        prop_assert!(c.holds, "{} fails for\n{}", c.name, w.to_text());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inequalities_hold_on_random_forms(
        m in 2usize..=3, n in 2u32..=4, la in 8u32..=11, lb in 8u32..=12,
        density in prop::sample::select(vec![0.02, 0.1, 0.3, 0.6, 0.9]),
        seed in any::<u64>(), arc in prop::option::of((0usize..40, 1usize..40)),
    ) {
        let (bx, r, window) = setting(m, la, lb);
        let gamma = match arc {
            Some((s, l)) if l < r.perimeter() => LatticePath::rectangle_arc(r, s % 40, l).unwrap(),
            _ => LatticePath::rectangle_loop(r).unwrap(),
        };
        let w = random_form(&window, n, density, seed).unwrap();
        assert_all_hold(&w, &gamma, &bx)?;
    }

    /// Width-one rings just inside or outside the rectangle, possibly broken.
    #[test]
    fn inequalities_hold_on_rings(
        la in 8u32..=11, lb in 8u32..=11, inside in prop::bool::ANY, cut in 0usize..60, gap in 0usize..4, n in 2u32..=3,
    ) {
        let (bx, r, _) = setting(2, la, lb);
        let gamma = LatticePath::rectangle_loop(r.clone()).unwrap();
        let mut w = FormZn::zero(2, n).unwrap();
        let (x0, y0) = (r.corner[0], r.corner[1]);
        let (x1, y1) = (x0 + la as i64 - 1, y0 + lb as i64 - 1);
        let ring: Vec<_> = if inside {
            r.interior_plaquettes().into_iter().filter(|p| p.base[0] == x0 || p.base[0] == x1 || p.base[1] == y0 || p.base[1] == y1).collect()
        } else {
            let big = Rectangle::new(vec![x0 - 1, y0 - 1], [0, 1], [la + 2, lb + 2], 1).unwrap();
            big.interior_plaquettes().into_iter().filter(|p| p.base[0] == x0 - 1 || p.base[0] == x1 + 1 || p.base[1] == y0 - 1 || p.base[1] == y1 + 1).collect()
        };
        let len = ring.len();
        for (i, p) in ring.iter().enumerate() {
            let skip = gap > 0 && (i + len - cut % len) % len < gap;
            if !skip {
                w.set(p, 1);
            }
        }
        assert_all_hold(&w, &gamma, &bx)?;
    }
}

/// A closed ring just inside an 8 x 8 rectangle, with gamma the open arc
/// that misses one edge of the loop. delta omega covers all of gamma_R,
/// so V is empty even though |supp delta omega ∩ supp gamma| < |supp gamma_R|,
/// and the component inequality fails by exactly 2 while the
/// corner-corrected one is tight.
#[test]
fn ring_under_open_arc_breaks_the_component_inequality() {
    let (bx, r, _) = setting(2, 8, 8);
    let mut w = FormZn::zero(2, 2).unwrap();
    let (x0, y0) = (r.corner[0], r.corner[1]);
    for p in r.interior_plaquettes() {
        if p.base[0] == x0 || p.base[0] == x0 + 7 || p.base[1] == y0 || p.base[1] == y0 + 7 {
            w.set(&p, 1);
        }
    }
    let gamma = LatticePath::rectangle_arc(r, 1, 31).unwrap();
    let s = lattice_dec::FormStats::compute(&w, &gamma, &bx).unwrap();
    assert_eq!((s.support, s.delta_support, s.delta_on_gamma, s.delta_on_gamma_r, s.corners, s.v, s.gamma_components), (28, 56, 31, 32, 3, 0, 1));
    let lhs = s.support + s.delta_support + 3 * s.corners;
    assert_eq!(lhs + 2, 3 * s.delta_on_gamma + 2 * s.gamma_components);
    assert_eq!(s.support + s.delta_support + 3 * s.corners, 3 * s.delta_on_gamma + s.v);
    for c in check_all(&w, &gamma, &bx).unwrap() {
        assert_eq!(c.holds, c.name != "support_plus_delta_components", "{}", c.name);
    }
}
