//! Named arrangements with exact defining forms.

use super::{normalize_form, Arrangement, FieldTag};
use crate::error::{MilnorError, Result};
use exact::{rat, Field, Quad};

/// A catalog entry: the arrangement plus auxiliary data used by other modules.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub arrangement: Arrangement,
    /// Name of the presentation of π₁(U) in the presentation catalog, if any.
    pub presentation: Option<String>,
    /// Exponents of a fiber-type structure, if the arrangement is fiber-type.
    pub exponents: Option<Vec<u64>>,
    /// Parent catalog name, a reordering of the parent's hyperplanes, and the index
    /// (in the reordered parent) of the hyperplane whose deletion gives this arrangement.
    pub deletion_of: Option<(String, Vec<usize>, usize)>,
    /// The full list of components of V¹₁(M) is known for this entry.
    pub cv_certified: bool,
}

/// Names accepted by [`catalog`], with parameters shown as placeholders.
pub const CATALOG_NAMES: &[&str] = &[
    "boolean(n)",
    "pencil(n)",
    "generic(n,d)",
    "braid",
    "monomial333",
    "b3",
    "deleted_b3",
    "falk1",
    "falk2",
    "icosidodecahedral",
];

fn parse_call(name: &str) -> Option<(&str, Vec<usize>)> {
    let open = name.find('(')?;
    let inner = name.strip_suffix(')')?.get(open + 1..)?;
    let args = inner.split(',').map(|s| s.trim().parse().ok()).collect::<Option<Vec<usize>>>()?;
    Some((&name[..open], args))
}

fn entry(a: Arrangement, presentation: Option<String>, exponents: Option<Vec<u64>>) -> CatalogEntry {
    CatalogEntry { arrangement: a, presentation, exponents, deletion_of: None, cv_certified: false }
}

/// Entries whose degree-one characteristic variety is completely documented.
const CV_CERTIFIED: &[&str] = &["boolean", "pencil", "generic", "braid", "b3", "deleted_b3", "falk1", "falk2"];

/// Look up a named arrangement.
pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let mut e = catalog_base(name)?;
    let head = name.split('(').next().unwrap_or(name);
    e.cv_certified = CV_CERTIFIED.contains(&head);
    if head == "deleted_b3" {
        // b3 reordered as x, y, z, x−z, x+z, x−y, x+y, y−z, y+z; deleting z gives deleted_b3.
        e.deletion_of = Some(("b3".into(), vec![0, 1, 2, 5, 6, 3, 4, 7, 8], 2));
    }
    Ok(e)
}

fn catalog_base(name: &str) -> Result<CatalogEntry> {
    let unknown = || MilnorError::UnknownName(name.to_string());
    if let Some((head, args)) = parse_call(name) {
        return match (head, args.as_slice()) {
            ("boolean", &[n]) if n >= 1 => {
                let a = boolean(n)?;
                Ok(entry(a, Some(format!("boolean_U({n})")), Some(vec![1; n])))
            }
            ("pencil", &[n]) if n >= 1 => {
                let a = pencil(n)?;
                Ok(entry(a, Some(format!("pencil_U({n})")), Some(vec![1, (n as u64).saturating_sub(1)])))
            }
            ("generic", &[n, d]) if d >= 1 && n > d => Ok(entry(generic(n, d)?, None, None)),
            _ => Err(unknown()),
        };
    }
    match name {
        "braid" => Ok(entry(braid()?, Some("braid_U".into()), Some(vec![1, 2, 3]))),
        "b3" => Ok(entry(b3()?, Some("b3_U".into()), Some(vec![1, 3, 5]))),
        "deleted_b3" => {
            let a = deleted_b3()?.with_multiplicities(vec![2, 1, 2, 2, 3, 3, 1, 1])?;
            Ok(entry(a, Some("deleted_b3_U".into()), Some(vec![1, 3, 4])))
        }
        "falk1" => Ok(entry(falk1()?, Some("falk_U".into()), None)),
        "falk2" => Ok(entry(falk2()?, Some("falk_U".into()), None)),
        "monomial333" => Ok(entry(monomial333()?, None, None)),
        "icosidodecahedral" => Ok(entry(icosidodecahedral()?, None, None)),
        _ => Err(unknown()),
    }
}

/// Concrete instances used by `catalog list` and `report --all`.
pub fn default_instances() -> Vec<&'static str> {
    vec![
        "boolean(3)",
        "pencil(4)",
        "generic(5,2)",
        "braid",
        "monomial333",
        "b3",
        "deleted_b3",
        "falk1",
        "falk2",
        "icosidodecahedral",
    ]
}

/// The n coordinate hyperplanes of ℂⁿ.
pub fn boolean(n: usize) -> Result<Arrangement> {
    let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    Arrangement::from_int_rows(&format!("boolean({n})"), &rows)
}

/// n lines through one point of ℙ²: x + k·y for k = 0..n−2, then y.
pub fn pencil(n: usize) -> Result<Arrangement> {
    let mut rows: Vec<Vec<i64>> = (0..n.saturating_sub(1)).map(|k| vec![1, k as i64, 0]).collect();
    rows.push(vec![0, 1, 0]);
    rows.truncate(n);
    Arrangement::from_int_rows(&format!("pencil({n})"), &rows)
}

/// n hyperplanes in general position in ℂ^{d+1}, with moment-curve normals (1, k, …, k^d).
pub fn generic(n: usize, d: usize) -> Result<Arrangement> {
    let rows: Vec<Vec<i64>> = (1..=n as i64).map(|k| (0..=d as u32).map(|e| k.pow(e)).collect()).collect();
    Arrangement::from_int_rows(&format!("generic({n},{d})"), &rows)
}

/// Braid arrangement (x±y)(x±z)(y±z), a decone of the A₃ reflection arrangement.
pub fn braid() -> Result<Arrangement> {
    Arrangement::from_int_rows(
        "braid",
        &[vec![1, 1, 0], vec![1, -1, 0], vec![1, 0, 1], vec![1, 0, -1], vec![0, 1, 1], vec![0, 1, -1]],
    )
}

/// B₃ reflection arrangement xyz(x−y)(x+y)(x−z)(x+z)(y−z)(y+z).
pub fn b3() -> Result<Arrangement> {
    Arrangement::from_int_rows(
        "b3",
        &[
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, -1, 0],
            vec![1, 1, 0],
            vec![1, 0, -1],
            vec![1, 0, 1],
            vec![0, 1, -1],
            vec![0, 1, 1],
        ],
    )
}

/// Deleted B₃: the B₃ arrangement without the plane z = 0, ordered
/// x, y, x−z, x+z, x−y, x+y, y−z, y+z.
pub fn deleted_b3() -> Result<Arrangement> {
    Arrangement::from_int_rows(
        "deleted_b3",
        &[
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![1, 0, -1],
            vec![1, 0, 1],
            vec![1, -1, 0],
            vec![1, 1, 0],
            vec![0, 1, -1],
            vec![0, 1, 1],
        ],
    )
}

/// First Falk arrangement z(x−y)y(x+y)(x−z)(x+z): two disjoint triple points.
pub fn falk1() -> Result<Arrangement> {
    Arrangement::from_int_rows(
        "falk1",
        &[vec![0, 0, 1], vec![1, -1, 0], vec![0, 1, 0], vec![1, 1, 0], vec![1, 0, -1], vec![1, 0, 1]],
    )
}

/// Second Falk arrangement z(x+z)(x−z)(y+z)(y−z)(x−y+z): two triple points on the line z = 0.
pub fn falk2() -> Result<Arrangement> {
    Arrangement::from_int_rows(
        "falk2",
        &[vec![0, 0, 1], vec![1, 0, 1], vec![1, 0, -1], vec![0, 1, 1], vec![0, 1, -1], vec![1, -1, 1]],
    )
}

/// Monomial arrangement (x³−y³)(y³−z³)(x³−z³) over ℚ(ω), ω a primitive cube root of unity.
///
/// Forms are ordered x−y, x−ωy, x−ω²y, y−z, y−ωz, y−ω²z, x−z, x−ω²z, x−ωz.
pub fn monomial333() -> Result<Arrangement> {
    let d = -3;
    let one = Quad::from_i64(1, d);
    let zero = Quad::from_i64(0, d);
    let omega = Quad::new(rat(-1, 2), rat(1, 2), d);
    let omega2 = omega.mul(&omega);
    let powers = [one.clone(), omega.clone(), omega2.clone()];
    let mut forms = Vec::new();
    for p in &powers {
        forms.push(vec![one.clone(), p.neg(), zero.clone()]);
    }
    for p in &powers {
        forms.push(vec![zero.clone(), one.clone(), p.neg()]);
    }
    for p in [&one, &omega2, &omega] {
        forms.push(vec![one.clone(), zero.clone(), p.neg()]);
    }
    Arrangement::new(Some("monomial333".into()), 3, FieldTag::QsqrtMinus3, forms)
}

/// The 30 vertices of the icosidodecahedron: even permutations of (0,0,±1) and ½(±1,±φ,±φ²).
pub fn icosidodecahedron_vertices() -> Vec<[Quad; 3]> {
    let d = 5;
    let q = |a: (i64, i64), b: (i64, i64)| Quad::new(rat(a.0, a.1), rat(b.0, b.1), d);
    let mut out: Vec<[Quad; 3]> = Vec::new();
    let zero = q((0, 1), (0, 1));
    for axis in 0..3 {
        for s in [1, -1] {
            let mut v = [zero.clone(), zero.clone(), zero.clone()];
            v[axis] = Quad::from_i64(s, d);
            out.push(v);
        }
    }
    // ½, φ/2 = (1+√5)/4, φ²/2 = (3+√5)/4
    let base = [q((1, 2), (0, 1)), q((1, 4), (1, 4)), q((3, 4), (1, 4))];
    for s0 in [1, -1] {
        for s1 in [1, -1] {
            for s2 in [1, -1] {
                let signed = [
                    base[0].mul(&Quad::from_i64(s0, d)),
                    base[1].mul(&Quad::from_i64(s1, d)),
                    base[2].mul(&Quad::from_i64(s2, d)),
                ];
                for shift in 0..3 {
                    out.push([
                        signed[shift % 3].clone(),
                        signed[(shift + 1) % 3].clone(),
                        signed[(shift + 2) % 3].clone(),
                    ]);
                }
            }
        }
    }
    out
}

fn cross(u: &[Quad; 3], v: &[Quad; 3]) -> Vec<Quad> {
    vec![
        u[1].mul(&v[2]).sub(&u[2].mul(&v[1])),
        u[2].mul(&v[0]).sub(&u[0].mul(&v[2])),
        u[0].mul(&v[1]).sub(&u[1].mul(&v[0])),
    ]
}

fn dot(f: &[Quad], v: &[Quad; 3]) -> Quad {
    f[0].mul(&v[0]).add(&f[1].mul(&v[1])).add(&f[2].mul(&v[2]))
}

/// Planes through the origin spanned by pairs of vertices and containing at least
/// `min_vertices` vertices, normalized and deduplicated in discovery order.
pub fn icosidodecahedral_planes(min_vertices: usize) -> Vec<Vec<Quad>> {
    let verts = icosidodecahedron_vertices();
    let mut planes: Vec<Vec<Quad>> = Vec::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let Some(f) = normalize_form(&cross(&verts[i], &verts[j])) else { continue };
            if planes.contains(&f) {
                continue;
            }
            let count = verts.iter().filter(|v| Field::is_zero(&dot(&f, v))).count();
            if count >= min_vertices {
                planes.push(f);
            }
        }
    }
    planes
}

/// The 16 planes over ℚ(√5) spanned by at least five vertices of the icosidodecahedron.
pub fn icosidodecahedral() -> Result<Arrangement> {
    let planes = icosidodecahedral_planes(5);
    Arrangement::new(Some("icosidodecahedral".into()), 3, FieldTag::Qsqrt5, planes)
}
