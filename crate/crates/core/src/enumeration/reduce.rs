use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::EnumerationError;
use crate::exact_geom::{int, rat, CSPolygon, Lattice, Rat, Rat2};

/// Splits the edge vector of `edge` as `n * w` with `w` primitive in `l`.
fn lattice_multiple(
    p: &CSPolygon,
    edge: usize,
    l: &Lattice,
) -> Result<(i64, Rat2), EnumerationError> {
    let n = p.len();
    if edge >= n {
        return Err(EnumerationError::EdgeNotReducible {
            edge,
            reason: format!("polygon has {n} edges"),
        });
    }
    let e = p.edge(edge);
    if !l.contains(&e) {
        return Err(EnumerationError::EdgeNotReducible {
            edge,
            reason: format!("edge vector {e} is not a lattice vector"),
        });
    }
    let (a, b) = l.coords(&e);
    let g = a.to_integer().gcd(&b.to_integer());
    let w = e.scale(&Rat::from_integer(g.clone()).recip());
    let g = g
        .to_i64()
        .ok_or_else(|| EnumerationError::EdgeNotReducible {
            edge,
            reason: "edge too long".into(),
        })?;
    Ok((g, w))
}

/// Moves the chain from the end of `edge` to the start of its opposite edge
/// by `-shift`, and the complementary chain by `+shift`.
fn split_shift(p: &CSPolygon, edge: usize, shift: &Rat2) -> Result<CSPolygon, EnumerationError> {
    let n = p.len();
    let m = p.m();
    let pts: Vec<Rat2> = (0..n)
        .map(|j| {
            let offset = (j + n - edge - 1) % n;
            if offset < m {
                p.vertex(j) - shift
            } else {
                p.vertex(j) + shift
            }
        })
        .collect();
    Ok(CSPolygon::from_points(&pts)?)
}

/// Shortens a lattice edge `n * w` (`n >= 2`, `w` primitive) and its
/// opposite edge to `w` by sliding the two halves of the polygon towards
/// each other along `w`.
pub fn reduce_long_edge(
    p: &CSPolygon,
    edge: usize,
    l: &Lattice,
) -> Result<CSPolygon, EnumerationError> {
    let (n, w) = lattice_multiple(p, edge, l)?;
    if n < 2 {
        return Err(EnumerationError::EdgeNotReducible {
            edge,
            reason: "edge is already primitive".into(),
        });
    }
    split_shift(p, edge, &w.scale(&rat(n - 1, 2)))
}

/// Inverse of [`reduce_long_edge`]: lengthens `edge` and its opposite edge
/// by `extra` copies of the primitive lattice vector along them.
pub fn stretch_edge(
    p: &CSPolygon,
    edge: usize,
    extra: u32,
    l: &Lattice,
) -> Result<CSPolygon, EnumerationError> {
    let (_, w) = lattice_multiple(p, edge, l)?;
    split_shift(p, edge, &w.scale(&rat(-(extra as i64), 2)))
}

/// Area removed by [`reduce_long_edge`]: `(n - 1)` times the area of the
/// parallelogram on `w` and the distance between the two edge lines.
pub fn reduction_area_loss(
    p: &CSPolygon,
    edge: usize,
    l: &Lattice,
) -> Result<Rat, EnumerationError> {
    let (n, w) = lattice_multiple(p, edge, l)?;
    let across = p.vertex(edge) + p.vertex(edge);
    Ok((int(n) - Rat::one()) * w.cross(&across).abs())
}
