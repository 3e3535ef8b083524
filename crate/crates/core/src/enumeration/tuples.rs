use serde::Serialize;

/// A flat-step subcase: the step `u'_3 - u'_2 = (run, rise)` with
/// `u'_1 = (0, 1)`, bounded by `x'_3 <= bound_x3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubcaseParams {
    pub rise: i64,
    pub run: i64,
    pub bound_x3: i64,
}

/// `(p1, q1, p2, q2)` with `u'_3 - u'_4 = (p1, q1)` and `u'_5 - u'_6 = (p2, q2)`.
pub type Tuple = (i64, i64, i64, i64);

/// Half-cycle `u'_1..u'_5` determined by a subcase and a tuple, using
/// `u'_4 - u'_5 = u'_1 - u'_2 + u'_3`.
pub fn subcase_decagon(s: &SubcaseParams, t: Tuple) -> [(i64, i64); 5] {
    let (p1, q1, p2, q2) = t;
    let u1 = (0, 1);
    let u5 = (p2, q2 - 1);
    let u4 = (u5.0 + s.run, u5.1 + s.rise + 1);
    let u3 = (u4.0 + p1, u4.1 + q1);
    let u2 = (u3.0 - s.run, u3.1 - s.rise);
    [u1, u2, u3, u4, u5]
}

fn cross(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Strict convexity of the closed polygon `u'_1..u'_m, -u'_1..-u'_m`,
/// traversed clockwise: every turn and every angular step around the centre
/// is clockwise, which rules out multiply wound stars.
pub fn is_strictly_convex_cw(h: &[(i64, i64)]) -> bool {
    let n = 2 * h.len();
    let v = |i: usize| {
        let p = h[i % h.len()];
        if (i % n) < h.len() {
            p
        } else {
            (-p.0, -p.1)
        }
    };
    (0..n).all(|i| {
        let (a, b, c) = (v(i), v(i + 1), v(i + 2));
        cross(a, b) < 0 && cross((b.0 - a.0, b.1 - a.1), (c.0 - b.0, c.1 - b.1)) < 0
    })
}

/// Twice the area of the decagon.
pub fn twice_area(h: &[(i64, i64)]) -> i64 {
    let n = 2 * h.len();
    let v = |i: usize| {
        let p = h[i % h.len()];
        if (i % n) < h.len() {
            p
        } else {
            (-p.0, -p.1)
        }
    };
    -(0..n).map(|i| cross(v(i), v(i + 1))).sum::<i64>()
}

/// All positive-integer tuples for the subcase whose decagon is strictly
/// convex and satisfies the `x'_3` bound, sorted lexicographically.
pub fn subcase_tuples(s: &SubcaseParams) -> Vec<Tuple> {
    let budget = s.bound_x3 - s.run;
    let qcap = 4 * s.bound_x3 + 8;
    let mut out = Vec::new();
    for p1 in 1..budget {
        for p2 in 1..=(budget - p1) {
            for q1 in 1..=qcap {
                for q2 in 1..=qcap {
                    let t = (p1, q1, p2, q2);
                    if is_strictly_convex_cw(&subcase_decagon(s, t)) {
                        assert!(q1 < qcap && q2 < qcap, "slope cap reached");
                        out.push(t);
                    }
                }
            }
        }
    }
    out.sort();
    out
}
