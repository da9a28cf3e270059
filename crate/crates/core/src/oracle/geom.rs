//! Geometric checks over F_p: vanishing orders along lines, the eighth
//! associated point of seven points, explicit Cremona coordinate maps, and
//! membership of transported curves in a system's base locus.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::config::{normalize_point, PointConfiguration};
use super::fp::Field;
use super::interp::{evaluate_form, kernel_basis, monomials, KernelBasis};
use super::matrix::{determinant, inverse, nullspace};
use super::poly;
use crate::error::{Error, Result};
use crate::lattice::{Divisor, MinusOneCurveId};

const SALT_LINE: u64 = 0x6c69;
const SALT_EIGHTH: u64 = 0x3874;
const SALT_CURVE: u64 = 0x6d62;
const SALT_PENCIL: u64 = 0x7063;
const SALT_FAMILY: u64 = 0x666d;

/// Vanishing order of the system along the line through configuration
/// points `i` and `j`: the order in epsilon of a random kernel member
/// expanded at a random line point in a random direction, minimized over
/// three independent members. Returns `degree + 1` when every member
/// vanishes identically on a whole plane through the line (out of scope for
/// the classes handled here).
pub fn line_vanishing_order(
    kb: &KernelBasis,
    cfg: &PointConfiguration,
    i: usize,
    j: usize,
) -> Result<u64> {
    if kb.dim() == 0 {
        return Err(Error::EmptyKernel);
    }
    let field = cfg.field();
    let d = kb.degree();
    let pi = cfg.point(i);
    let pj = cfg.point(j);
    let mut rng = cfg.derived_rng(SALT_LINE ^ ((i as u64) << 8 | j as u64));
    let mut best = d + 1;
    for _ in 0..3 {
        let g = kb.random_member(field, &mut rng);
        let order = (0..8)
            .find_map(|_| directional_order(field, d, &g, pi, pj, &mut rng))
            .unwrap_or(d + 1);
        best = best.min(order);
        if best == 0 {
            break;
        }
    }
    Ok(best)
}

/// Order in epsilon of `g(Q + eps*w)` for a random line point Q and random
/// direction w; `None` when the expansion is identically zero.
fn directional_order(
    field: &Field,
    d: u64,
    g: &[u64],
    pi: [u64; 4],
    pj: [u64; 4],
    rng: &mut impl Rng,
) -> Option<u64> {
    let t = rng.gen_range(1..field.prime());
    let q: [u64; 4] = std::array::from_fn(|k| field.add(pi[k], field.mul(t, pj[k])));
    let w: [u64; 4] = std::array::from_fn(|_| rng.gen_range(0..field.prime()));
    let samples: Vec<(u64, u64)> = (0..=d)
        .map(|e| {
            let pt: [u64; 4] = std::array::from_fn(|k| field.add(q[k], field.mul(e, w[k])));
            (e, evaluate_form(field, d, g, pt))
        })
        .collect();
    let h = poly::lagrange(field, &samples);
    h.iter().position(|&c| c != 0).map(|k| k as u64)
}

/// Coefficients `[c0, c1, c2]` of the quadratic `u -> q(base + u*dir)` for a
/// quadric coefficient vector `q`.
fn quadratic_along(field: &Field, q: &[u64], base: [u64; 4], dir: [u64; 4]) -> [u64; 3] {
    let at = |u: u64| {
        let pt: [u64; 4] = std::array::from_fn(|k| field.add(base[k], field.mul(u, dir[k])));
        evaluate_form(field, 2, q, pt)
    };
    let (f0, f1, f2) = (at(0), at(1), at(2));
    // f(u) = c0 + c1 u + c2 u^2 from values at u = 0, 1, 2.
    let c2 = field.div(field.add(field.sub(f2, field.mul(2, f1)), f0), 2);
    let c1 = field.sub(field.sub(f1, f0), c2);
    [f0, c1, c2]
}

/// Sylvester determinant of two univariates with formal degrees
/// `a.len()-1` and `b.len()-1` (coefficients ascending).
fn sylvester_det(field: &Field, a: &[u64], b: &[u64]) -> u64 {
    let da = a.len() - 1;
    let db = b.len() - 1;
    let n = da + db;
    let mut m = vec![vec![0u64; n]; n];
    for (row, mr) in m.iter_mut().enumerate().take(db) {
        for (k, &c) in a.iter().enumerate() {
            mr[row + da - k] = c;
        }
    }
    for (row, mr) in m.iter_mut().enumerate().skip(db) {
        let shift = row - db;
        for (k, &c) in b.iter().enumerate() {
            mr[shift + db - k] = c;
        }
    }
    determinant(field, m)
}

/// Common roots of two quadratics given as ascending coefficient triples.
fn common_roots(field: &Field, a: [u64; 3], b: [u64; 3], rng: &mut impl Rng) -> Vec<u64> {
    let g = poly::gcd(
        field,
        &poly::normalize(a.to_vec()),
        &poly::normalize(b.to_vec()),
    );
    poly::roots(field, &g, rng)
}

fn points_equal(field: &Field, a: [u64; 4], b: [u64; 4]) -> bool {
    normalize_point(field, a) == normalize_point(field, b)
}

fn random_invertible(field: &Field, rng: &mut impl Rng) -> Vec<Vec<u64>> {
    loop {
        let m: Vec<Vec<u64>> = (0..4)
            .map(|_| (0..4).map(|_| rng.gen_range(0..field.prime())).collect())
            .collect();
        if determinant(field, m.clone()) != 0 {
            return m;
        }
    }
}

fn apply_matrix(field: &Field, m: &[Vec<u64>], pt: [u64; 4]) -> [u64; 4] {
    std::array::from_fn(|i| {
        m[i].iter()
            .zip(&pt)
            .fold(0u64, |acc, (a, b)| field.add(acc, field.mul(*a, *b)))
    })
}

/// The eighth associated point of the seven labeled configuration points:
/// the base point of the net of quadrics through them that is none of the
/// seven. Returned normalized.
pub fn eighth_point(cfg: &PointConfiguration, seven: [usize; 7]) -> Result<[u64; 4]> {
    for (k, &i) in seven.iter().enumerate() {
        if i == 0 || i > 8 {
            return Err(Error::IndexOutOfRange(i));
        }
        if seven[..k].contains(&i) {
            return Err(Error::EqualIndices);
        }
    }
    let field = cfg.field();
    let mut rng = cfg.derived_rng(SALT_EIGHTH ^ seven.iter().fold(0u64, |a, &i| a * 9 + i as u64));
    for _ in 0..30 {
        if let Some(pt) = eighth_point_attempt(field, cfg, seven, &mut rng) {
            return Ok(pt);
        }
    }
    Err(Error::DegenerateConfiguration(30))
}

fn eighth_point_attempt(
    field: &Field,
    cfg: &PointConfiguration,
    seven: [usize; 7],
    rng: &mut ChaCha8Rng,
) -> Option<[u64; 4]> {
    // Random coordinate change, so the base points avoid the plane x3 = 0.
    let m = random_invertible(field, rng);
    let minv = inverse(field, &m).expect("matrix was checked invertible");
    let pts: Vec<[u64; 4]> = seven
        .iter()
        .map(|&i| apply_matrix(field, &m, cfg.point(i)))
        .collect();

    // The net of quadrics through the seven points, in the new coordinates.
    let exps = monomials(2);
    let rows: Vec<Vec<u64>> = pts
        .iter()
        .map(|pt| {
            exps.iter()
                .map(|e| {
                    e.iter()
                        .zip(pt)
                        .fold(1u64, |v, (&exp, &x)| field.mul(v, field.pow(x, exp)))
                })
                .collect()
        })
        .collect();
    let net = nullspace(field, rows, 10);
    if net.len() != 3 {
        return None;
    }
    let members: Vec<Vec<u64>> = (0..3)
        .map(|_| random_combination(field, &net, rng))
        .collect();

    let candidates = net_base_points(field, &members, rng)?;
    let mut found: Vec<[u64; 4]> = Vec::new();
    for cand in candidates {
        if net
            .iter()
            .any(|q| evaluate_form(field, 2, q, cand) != 0)
        {
            continue;
        }
        if pts.iter().any(|&p| points_equal(field, p, cand)) {
            continue;
        }
        if !found.iter().any(|&p| points_equal(field, p, cand)) {
            found.push(cand);
        }
    }
    if found.len() != 1 {
        return None;
    }
    Some(normalize_point(field, apply_matrix(field, &minv, found[0])))
}

fn random_combination(field: &Field, basis: &[Vec<u64>], rng: &mut impl Rng) -> Vec<u64> {
    let n = basis[0].len();
    let mut out = vec![0u64; n];
    for b in basis {
        let c = rng.gen_range(1..field.prime());
        for (o, &x) in out.iter_mut().zip(b) {
            *o = field.add(*o, field.mul(c, x));
        }
    }
    out
}

const Z_DIR: [u64; 4] = [0, 0, 1, 0];

/// Res_z(q1, q2) specialized at (x, y) in the chart x3 = 1.
fn res_z_at(field: &Field, q1: &[u64], q2: &[u64], x: u64, y: u64) -> u64 {
    let base = [x, y, 0, 1];
    let a = quadratic_along(field, q1, base, Z_DIR);
    let b = quadratic_along(field, q2, base, Z_DIR);
    sylvester_det(field, &a, &b)
}

/// Res_z(q1, q2)(x, y) as a univariate in y at fixed x, padded to formal
/// degree 4.
fn res_z_in_y(field: &Field, q1: &[u64], q2: &[u64], x: u64) -> Vec<u64> {
    let samples: Vec<(u64, u64)> = (0..5).map(|y| (y, res_z_at(field, q1, q2, x, y))).collect();
    let mut c = poly::lagrange(field, &samples);
    c.resize(5, 0);
    c
}

/// Common zeros in the chart x3 = 1 of three quadrics whose intersection is
/// zero-dimensional; `None` signals a degenerate elimination (caller
/// re-randomizes).
fn net_base_points(
    field: &Field,
    qs: &[Vec<u64>],
    rng: &mut ChaCha8Rng,
) -> Option<Vec<[u64; 4]>> {
    let (q1, q2, q3) = (&qs[0], &qs[1], &qs[2]);
    // s(x) = Res_y(Res_z(q1,q2), Res_z(q1,q3)), degree <= 32, by sampling.
    let samples: Vec<(u64, u64)> = (0..33)
        .map(|x| {
            let a = res_z_in_y(field, q1, q2, x);
            let b = res_z_in_y(field, q1, q3, x);
            (x, sylvester_det(field, &a, &b))
        })
        .collect();
    let s = poly::lagrange(field, &samples);
    if s.is_empty() {
        return None;
    }
    let mut out = Vec::new();
    for x0 in poly::roots(field, &s, rng) {
        let a = poly::normalize(res_z_in_y(field, q1, q2, x0));
        if a.is_empty() {
            continue;
        }
        for y0 in poly::roots(field, &a, rng) {
            let base = [x0, y0, 0, 1];
            let c1 = quadratic_along(field, q1, base, Z_DIR);
            let c2 = quadratic_along(field, q2, base, Z_DIR);
            for z0 in common_roots(field, c1, c2, rng) {
                let pt = [x0, y0, z0, 1];
                if evaluate_form(field, 2, q3, pt) == 0 {
                    out.push(pt);
                }
            }
        }
    }
    Some(out)
}

/// Coefficients of `u -> g(base + u*dir)` for a degree-d form, padded to
/// formal degree d (length d + 1).
fn restriction_along(field: &Field, d: u64, g: &[u64], base: [u64; 4], dir: [u64; 4]) -> Vec<u64> {
    let samples: Vec<(u64, u64)> = (0..=d)
        .map(|u| {
            let pt: [u64; 4] = std::array::from_fn(|k| field.add(base[k], field.mul(u, dir[k])));
            (u, evaluate_form(field, d, g, pt))
        })
        .collect();
    let mut c = poly::lagrange(field, &samples);
    c.resize(d as usize + 1, 0);
    c
}

/// Res_z of a quadric and a degree-d form, specialized at fixed x and
/// returned as a univariate in y padded to formal degree 2d.
fn res_z_quadric_form(field: &Field, q: &[u64], d: u64, g: &[u64], x: u64) -> Vec<u64> {
    let samples: Vec<(u64, u64)> = (0..=2 * d)
        .map(|y| {
            let base = [x, y, 0, 1];
            let a = quadratic_along(field, q, base, Z_DIR);
            let b = restriction_along(field, d, g, base, Z_DIR);
            (y, sylvester_det(field, &a, &b))
        })
        .collect();
    let mut c = poly::lagrange(field, &samples);
    c.resize(2 * d as usize + 1, 0);
    c
}

/// The single unassigned base point of the family L3(2m; m at every point
/// except `light`, m-1 at `light`): the extra intersection of a generic
/// member with the base curve of the quadric pencil through all eight
/// points. For m = 1 this is the eighth associated point; for m > 1 it
/// moves along that curve. Returned normalized and deterministic in the
/// configuration.
pub fn family_base_point(
    cfg: &PointConfiguration,
    m: u64,
    light: usize,
) -> Result<[u64; 4]> {
    if light == 0 || light > 8 {
        return Err(Error::IndexOutOfRange(light));
    }
    if m == 0 {
        return Err(Error::EmptySystem);
    }
    let field = cfg.field();
    let mut rng = cfg.derived_rng(SALT_FAMILY ^ (m << 4 | light as u64));
    for _ in 0..30 {
        if let Some(pt) = family_base_point_attempt(field, cfg, m, light, &mut rng)? {
            return Ok(pt);
        }
    }
    Err(Error::DegenerateConfiguration(30))
}

fn family_base_point_attempt(
    field: &Field,
    cfg: &PointConfiguration,
    m: u64,
    light: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Option<[u64; 4]>> {
    // Random coordinate change, so the sought point avoids the plane x3 = 0.
    let mat = random_invertible(field, rng);
    let minv = inverse(field, &mat).expect("matrix was checked invertible");
    let moved = cfg.with_points(std::array::from_fn(|k| {
        apply_matrix(field, &mat, cfg.point(k + 1))
    }))?;

    let pencil = kernel_basis(2, &[1; 8], &moved)?;
    if pencil.dim() != 2 {
        return Ok(None);
    }
    let d = 2 * m;
    let mut mults = [m; 8];
    mults[light - 1] = m - 1;
    let kb = kernel_basis(d, &mults, &moved)?;
    if kb.dim() == 0 {
        return Err(Error::EmptyKernel);
    }
    let r1 = &pencil.basis()[0];
    let r2 = &pencil.basis()[1];
    let f = kb.random_member(field, rng);

    // s(x) = Res_y(Res_z(r1, r2), Res_z(r1, f)); its roots cover the
    // x-coordinates of the pencil curve's intersections with f.
    let samples: Vec<(u64, u64)> = (0..=8 * d)
        .map(|x| {
            let a = res_z_in_y(field, r1, r2, x);
            let b = res_z_quadric_form(field, r1, d, &f, x);
            (x, sylvester_det(field, &a, &b))
        })
        .collect();
    let s = poly::lagrange(field, &samples);
    if s.is_empty() {
        return Ok(None);
    }
    let mut found: Vec<[u64; 4]> = Vec::new();
    for x0 in poly::roots(field, &s, rng) {
        let a = poly::normalize(res_z_in_y(field, r1, r2, x0));
        if a.is_empty() {
            continue;
        }
        for y0 in poly::roots(field, &a, rng) {
            let base = [x0, y0, 0, 1];
            let c1 = quadratic_along(field, r1, base, Z_DIR);
            let c2 = quadratic_along(field, r2, base, Z_DIR);
            for z0 in common_roots(field, c1, c2, rng) {
                let pt = [x0, y0, z0, 1];
                if kb.basis().iter().any(|g| evaluate_form(field, d, g, pt) != 0) {
                    continue;
                }
                if (1..=8).any(|i| points_equal(field, moved.point(i), pt)) {
                    continue;
                }
                if !found.iter().any(|&p| points_equal(field, p, pt)) {
                    found.push(pt);
                }
            }
        }
    }
    if found.len() != 1 {
        return Ok(None);
    }
    Ok(Some(normalize_point(field, apply_matrix(field, &minv, found[0]))))
}

/// Applies the cubic Cremona map based at the four labeled configuration
/// points to each input point. Errors on points of the indeterminacy locus
/// (two or more zero coordinates after moving the base points to the
/// simplex).
pub fn cremona_point_map(
    pts: &[[u64; 4]],
    b: [usize; 4],
    cfg: &PointConfiguration,
) -> Result<Vec<[u64; 4]>> {
    let base: [[u64; 4]; 4] = std::array::from_fn(|k| {
        let i = b[k];
        assert!((1..=8).contains(&i), "base labels are 1..=8");
        cfg.point(i)
    });
    cremona_map_points(cfg.field(), &base, pts)
}

fn cremona_map_points(
    field: &Field,
    base: &[[u64; 4]; 4],
    pts: &[[u64; 4]],
) -> Result<Vec<[u64; 4]>> {
    // R has the base points as rows; v -> (R^-1)^T v sends them to the
    // simplex, w -> R^T w sends the simplex back.
    let r: Vec<Vec<u64>> = base.iter().map(|p| p.to_vec()).collect();
    let rinv = inverse(field, &r).ok_or_else(|| {
        Error::Internal("cremona base points are coplanar".into())
    })?;
    let to_simplex =
        |v: [u64; 4]| -> [u64; 4] {
            std::array::from_fn(|i| {
                (0..4).fold(0u64, |acc, j| field.add(acc, field.mul(rinv[j][i], v[j])))
            })
        };
    let from_simplex =
        |w: [u64; 4]| -> [u64; 4] {
            std::array::from_fn(|i| {
                (0..4).fold(0u64, |acc, j| field.add(acc, field.mul(r[j][i], w[j])))
            })
        };
    pts.iter()
        .map(|&p| {
            let y = to_simplex(p);
            if y.iter().filter(|&&c| c == 0).count() >= 2 {
                return Err(Error::Indeterminacy);
            }
            let img: [u64; 4] = std::array::from_fn(|i| {
                (0..4)
                    .filter(|&j| j != i)
                    .fold(1u64, |acc, j| field.mul(acc, y[j]))
            });
            Ok(normalize_point(field, from_simplex(img)))
        })
        .collect()
}

/// The configuration after the Cremona based at the labeled points: base
/// points stay, the other four are mapped through the coordinate map.
pub fn transport_config(
    cfg: &PointConfiguration,
    b: [usize; 4],
) -> Result<PointConfiguration> {
    let mut points = *cfg.points();
    for (k, pt) in points.iter_mut().enumerate() {
        if !b.contains(&(k + 1)) {
            *pt = cremona_point_map(&[*pt], b, cfg)?[0];
        }
    }
    cfg.with_points(points)
}

/// A Cremona word carrying the curve down to a line, with the end pair.
fn word_to_line(id: MinusOneCurveId) -> (Vec<[usize; 4]>, (usize, usize)) {
    let mut cur = id;
    let mut word = Vec::new();
    while cur.level() > 0 {
        let (b, c) = cur.pair();
        let others = || (1..=8usize).filter(|&i| i != b && i != c);
        let base: [usize; 4] = if cur.level() % 2 == 1 {
            let v: Vec<usize> = others().take(4).collect();
            [v[0], v[1], v[2], v[3]]
        } else {
            let v: Vec<usize> = others().take(2).collect();
            [b, c, v[0], v[1]]
        };
        let step = crate::cremona::CremonaStep::new(base).expect("labels are distinct");
        let next = step.apply_minus_one(cur);
        debug_assert_eq!(next.level(), cur.level() - 1);
        word.push(base);
        cur = next;
    }
    (word, cur.pair())
}

/// True when the curve C_a^{b,c} lies in the base locus of `l`, tested by
/// transporting sample points of a line through the Cremona word that
/// produces the curve. Supported for a <= 2.
pub fn curve_membership_check(
    l: &Divisor<i64>,
    id: MinusOneCurveId,
    cfg: &PointConfiguration,
) -> Result<bool> {
    if id.level() > 2 {
        return Err(Error::UnsupportedCurveLevel(id.level()));
    }
    let d = *l.degree();
    if d < 0 || l.mults().iter().any(|&m| m < 0) {
        return Err(Error::Internal(format!("{l} is not a user-facing class")));
    }
    let mults: Vec<u64> = l.mults().iter().map(|&m| m as u64).collect();
    let kb = kernel_basis(d as u64, &mults, cfg)?;
    if kb.dim() == 0 {
        return Err(Error::EmptyKernel);
    }
    let field = cfg.field();

    let (word, (u, v)) = word_to_line(id);
    let mut cfgs = vec![cfg.clone()];
    for &b in &word {
        let next = transport_config(cfgs.last().unwrap(), b)?;
        cfgs.push(next);
    }
    let last = cfgs.last().unwrap();
    let pu = last.point(u);
    let pv = last.point(v);

    let n_samples = ((2 * id.level() + 2) as usize).max(6);
    let mut rng = cfg.derived_rng(SALT_CURVE ^ ((id.level() << 8) | (u as u64) << 4 | v as u64));
    'attempt: for _ in 0..20 {
        let mut samples: Vec<[u64; 4]> = (0..n_samples)
            .map(|_| {
                let t = rng.gen_range(1..field.prime());
                std::array::from_fn(|k| field.add(pu[k], field.mul(t, pv[k])))
            })
            .collect();
        for k in (0..word.len()).rev() {
            match cremona_point_map(&samples, word[k], &cfgs[k]) {
                Ok(moved) => samples = moved,
                Err(Error::Indeterminacy) => continue 'attempt,
                Err(e) => return Err(e),
            }
        }
        return Ok(samples.iter().all(|&q| kb.all_vanish_at(field, q)));
    }
    Err(Error::DegenerateConfiguration(20))
}

/// Sample points of the quartic curve cut out by the pencil of quadrics
/// through all 8 configuration points (random plane sections), excluding
/// the configuration points themselves.
pub fn sample_pencil_curve(cfg: &PointConfiguration, n: usize) -> Result<Vec<[u64; 4]>> {
    let field = cfg.field();
    let kb = kernel_basis(2, &[1; 8], cfg)?;
    if kb.dim() != 2 {
        return Err(Error::Internal(format!(
            "expected a pencil of quadrics, got dimension {}",
            kb.dim()
        )));
    }
    let q1 = &kb.basis()[0];
    let q2 = &kb.basis()[1];
    let mut rng = cfg.derived_rng(SALT_PENCIL);
    let mut out: Vec<[u64; 4]> = Vec::new();
    for _ in 0..200 {
        if out.len() >= n {
            break;
        }
        // A random plane, spanned by the nullspace of one linear form.
        let normal: Vec<u64> = (0..4).map(|_| rng.gen_range(0..field.prime())).collect();
        if normal.iter().all(|&c| c == 0) {
            continue;
        }
        let span = nullspace(field, vec![normal], 4);
        if span.len() != 3 {
            continue;
        }
        let [pa, pb, pc]: [[u64; 4]; 3] =
            std::array::from_fn(|k| std::array::from_fn(|i| span[k][i]));
        // Points of the plane: s*A + B + u*C; eliminate u between the two
        // restricted conics, then sweep roots in s.
        let at = |s: u64, u: u64| -> [u64; 4] {
            std::array::from_fn(|i| {
                field.add(field.add(field.mul(s, pa[i]), pb[i]), field.mul(u, pc[i]))
            })
        };
        let res_at = |s: u64| {
            let base = at(s, 0);
            let a = quadratic_along(field, q1, base, pc);
            let b = quadratic_along(field, q2, base, pc);
            sylvester_det(field, &a, &b)
        };
        let samples: Vec<(u64, u64)> = (0..5).map(|s| (s, res_at(s))).collect();
        let r = poly::lagrange(field, &samples);
        if r.is_empty() {
            continue;
        }
        for s0 in poly::roots(field, &r, &mut rng) {
            let base = at(s0, 0);
            let a = quadratic_along(field, q1, base, pc);
            let b = quadratic_along(field, q2, base, pc);
            for u0 in common_roots(field, a, b, &mut rng) {
                let pt = normalize_point(field, at(s0, u0));
                if pt.iter().all(|&c| c == 0) {
                    continue;
                }
                if evaluate_form(field, 2, q1, pt) != 0 || evaluate_form(field, 2, q2, pt) != 0 {
                    continue;
                }
                if (1..=8).any(|i| points_equal(field, cfg.point(i), pt)) {
                    continue;
                }
                if !out.iter().any(|&p| points_equal(field, p, pt)) {
                    out.push(pt);
                }
            }
        }
    }
    if out.len() < n {
        return Err(Error::DegenerateConfiguration(200));
    }
    out.truncate(n);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::interp::h0_interpolation;

    fn cfg() -> PointConfiguration {
        PointConfiguration::new(2_147_483_647, 42).unwrap()
    }

    fn div(d: i64, m: &[i64]) -> Divisor<i64> {
        Divisor::new(d, m).unwrap()
    }

    #[test]
    fn line_orders_match_pair_excess() {
        let cfg = cfg();
        let kb = kernel_basis(3, &[3, 3, 0, 0, 0, 0, 0, 0], &cfg).unwrap();
        assert_eq!(line_vanishing_order(&kb, &cfg, 1, 2).unwrap(), 3);
        assert_eq!(line_vanishing_order(&kb, &cfg, 3, 4).unwrap(), 0);

        let kb = kernel_basis(2, &[2, 2, 2, 0, 0, 0, 0, 0], &cfg).unwrap();
        assert_eq!(line_vanishing_order(&kb, &cfg, 1, 2).unwrap(), 2);

        let kb = kernel_basis(4, &[2; 8], &cfg).unwrap();
        assert_eq!(line_vanishing_order(&kb, &cfg, 1, 2).unwrap(), 0);
    }

    #[test]
    fn eighth_point_lies_on_the_whole_net() {
        let cfg = cfg();
        let field = cfg.field();
        let p = eighth_point(&cfg, [1, 2, 3, 4, 5, 6, 7]).unwrap();
        let kb = kernel_basis(2, &[1, 1, 1, 1, 1, 1, 1, 0], &cfg).unwrap();
        assert_eq!(kb.dim(), 3);
        assert!(kb.all_vanish_at(field, p));
        for i in 1..=7 {
            assert!(!points_equal(field, p, cfg.point(i)));
        }
        // Deterministic.
        assert_eq!(p, eighth_point(&cfg, [1, 2, 3, 4, 5, 6, 7]).unwrap());
    }

    #[test]
    fn family_base_point_at_m1_is_the_eighth_point() {
        let cfg = cfg();
        let p1 = family_base_point(&cfg, 1, 8).unwrap();
        assert_eq!(p1, eighth_point(&cfg, [1, 2, 3, 4, 5, 6, 7]).unwrap());
        assert_eq!(p1, family_base_point(&cfg, 1, 8).unwrap());
    }

    #[test]
    fn family_base_point_moves_with_the_multiplicity() {
        // Every member of L3(4;2^7,1) passes through P_2, but P_2 is not
        // the eighth associated point: the product members q*r (q through
        // seven points, r through all eight) span only a hyperplane of the
        // system, and the remaining member misses the eighth point.
        let cfg = cfg();
        let field = cfg.field();
        let p1 = family_base_point(&cfg, 1, 8).unwrap();
        let p2 = family_base_point(&cfg, 2, 8).unwrap();
        assert_ne!(p1, p2);
        let kb = kernel_basis(4, &[2, 2, 2, 2, 2, 2, 2, 1], &cfg).unwrap();
        assert_eq!(kb.dim(), 6);
        assert!(kb.all_vanish_at(field, p2));
        assert!(!kb.all_vanish_at(field, p1));
        // Both points lie on the pencil base curve.
        let pencil = kernel_basis(2, &[1; 8], &cfg).unwrap();
        assert!(pencil.all_vanish_at(field, p1));
        assert!(pencil.all_vanish_at(field, p2));
    }

    #[test]
    fn family_base_point_at_m3() {
        let cfg = cfg();
        let field = cfg.field();
        let p3 = family_base_point(&cfg, 3, 8).unwrap();
        let kb = kernel_basis(6, &[3, 3, 3, 3, 3, 3, 3, 2], &cfg).unwrap();
        assert!(kb.all_vanish_at(field, p3));
        assert_ne!(p3, family_base_point(&cfg, 1, 8).unwrap());
        assert_ne!(p3, family_base_point(&cfg, 2, 8).unwrap());
    }

    #[test]
    fn cremona_map_is_an_involution() {
        let cfg = cfg();
        let field = cfg.field();
        let mut rng = cfg.derived_rng(99);
        let pts: Vec<[u64; 4]> = (0..5)
            .map(|_| std::array::from_fn(|_| rng.gen_range(0..field.prime())))
            .collect();
        let b = [1, 2, 3, 4];
        let once = cremona_point_map(&pts, b, &cfg).unwrap();
        let twice = cremona_point_map(&once, b, &cfg).unwrap();
        for (p, q) in pts.iter().zip(&twice) {
            assert!(points_equal(field, *p, *q));
        }
        // Base points are indeterminate.
        assert!(matches!(
            cremona_point_map(&[cfg.point(1)], b, &cfg),
            Err(Error::Indeterminacy)
        ));
    }

    #[test]
    fn cremona_map_sends_a_line_to_a_twisted_cubic() {
        // Samples of a general line through points 1, 2 map to points of the
        // unique twisted cubic through the six transported points 1..6. The
        // quadrics through a twisted cubic form a 3-dimensional space (the
        // curve imposes 7 conditions), so quadrics through the 6 points plus
        // three image samples must still have dimension 3, and the other
        // samples must lie on all of them.
        let cfg = cfg();
        let field = cfg.field();
        let b = [3, 4, 5, 6];
        let moved_cfg = transport_config(&cfg, b).unwrap();
        let p1 = cfg.point(1);
        let p2 = cfg.point(2);
        let mut rng = cfg.derived_rng(7);
        let samples: Vec<[u64; 4]> = (0..8)
            .map(|_| {
                let t = rng.gen_range(1..field.prime());
                std::array::from_fn(|k| field.add(p1[k], field.mul(t, p2[k])))
            })
            .collect();
        let moved = cremona_point_map(&samples, b, &cfg).unwrap();

        let exps = monomials(2);
        let eval_row = |pt: [u64; 4]| -> Vec<u64> {
            exps.iter()
                .map(|e| {
                    e.iter()
                        .zip(&pt)
                        .fold(1u64, |v, (&exp, &x)| field.mul(v, field.pow(x, exp)))
                })
                .collect()
        };
        let mut rows: Vec<Vec<u64>> = (1..=6).map(|i| eval_row(moved_cfg.point(i))).collect();
        rows.extend(moved[..3].iter().map(|&q| eval_row(q)));
        let quadrics = nullspace(field, rows, 10);
        assert_eq!(quadrics.len(), 3);
        for &q in &moved[3..] {
            for member in &quadrics {
                assert_eq!(evaluate_form(field, 2, member, q), 0);
            }
        }
    }

    #[test]
    fn transported_configuration_stays_general() {
        let cfg = cfg();
        let moved = transport_config(&cfg, [1, 2, 3, 4]).unwrap();
        for i in 1..=4 {
            assert_eq!(moved.point(i), cfg.point(i));
        }
        assert_ne!(moved.point(5), normalize_point(cfg.field(), cfg.point(5)));
        assert_eq!(
            h0_interpolation(2, &[1; 8], &moved).unwrap(),
            h0_interpolation(2, &[1; 8], &cfg).unwrap()
        );
    }

    #[test]
    fn membership_examples() {
        let cfg = cfg();
        // Fixed double plane contains the edge.
        let l = div(2, &[2, 2, 2]);
        assert!(curve_membership_check(&l, MinusOneCurveId::new(0, 1, 2).unwrap(), &cfg).unwrap());
        // Base-point-free class contains no line.
        let l = div(4, &[2; 8]);
        assert!(!curve_membership_check(&l, MinusOneCurveId::new(0, 1, 2).unwrap(), &cfg).unwrap());
        // The worked example's residual contains C_1^{6,7}.
        let l = div(5, &[4, 3, 3, 3, 2, 1, 1, 1]);
        assert!(curve_membership_check(&l, MinusOneCurveId::new(1, 6, 7).unwrap(), &cfg).unwrap());
        assert!(curve_membership_check(&l, MinusOneCurveId::new(0, 1, 2).unwrap(), &cfg).unwrap());
        // But not every level-1 curve.
        assert!(!curve_membership_check(&l, MinusOneCurveId::new(1, 1, 2).unwrap(), &cfg).unwrap());
        // Level cap.
        assert!(matches!(
            curve_membership_check(&l, MinusOneCurveId::new(3, 1, 2).unwrap(), &cfg),
            Err(Error::UnsupportedCurveLevel(3))
        ));
    }

    #[test]
    fn pencil_curve_points_lie_on_both_quadrics() {
        let cfg = cfg();
        let field = cfg.field();
        let pts = sample_pencil_curve(&cfg, 6).unwrap();
        assert_eq!(pts.len(), 6);
        let kb = kernel_basis(2, &[1; 8], &cfg).unwrap();
        for &p in &pts {
            assert!(kb.all_vanish_at(field, p));
        }
    }
}
