//! Named presentations of complements of projectivized arrangements.
//!
//! Each generator carries its homology class in ℤⁿ (one coordinate per
//! hyperplane of the catalog arrangement, the deconing hyperplane included),
//! so a multiplicity vector m induces the character χ_m on the generators.
//! With relators u x u⁻¹ = α(u)(x), the base generators u_j represent inverse
//! meridians, so their classes carry a minus sign.

use super::artin::{semidirect_presentation, Automorphism, Composition, PureBraidWord};
use super::{GroupPresentation, Word};
use crate::error::{MilnorError, Result};

/// Names accepted by [`presentation_catalog`], with parameters as placeholders.
pub const PRESENTATION_NAMES: &[&str] =
    &["falk_U", "b3_U", "deleted_b3_U", "pencil_U(n)", "boolean_U(n)", "braid_U"];

/// Monodromy words of the fiber-type presentation of the B₃ complement, F₅ ⋊ F₃.
pub const B3_WORDS: [&str; 3] = ["A23 A24 A34", "A14^{A24 A34} A25", "A35^{A23 A25}"];

/// Monodromy words of the fiber-type presentation of the deleted B₃ complement, F₄ ⋊ F₃.
pub const DELETED_B3_WORDS: [&str; 3] = ["A23", "A13^{A23} A24", "A14^{A24}"];

/// Monodromy words of the braid arrangement complement, F₃ ⋊ F₂.
pub const BRAID_WORDS: [&str; 2] = ["A13", "A23"];

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Classes of fiber generators (meridians) followed by base generators (inverse meridians).
fn fiber_type_meridians(n: usize, fiber: &[usize], base: &[usize]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = fiber.iter().map(|&h| unit(n, h)).collect();
    out.extend(base.iter().map(|&h| unit(n, h).iter().map(|x| -x).collect()));
    out
}

fn sum_units(n: usize, idx: &[usize]) -> Vec<i64> {
    let mut v = vec![0; n];
    for &i in idx {
        v[i] += 1;
    }
    v
}

fn fiber_type(a: usize, words: &[&str]) -> Result<GroupPresentation> {
    let auts: Vec<Automorphism> =
        words.iter().map(|w| PureBraidWord::parse(w)?.automorphism_with(a, Composition::Right)).collect::<Result<_>>()?;
    semidirect_presentation(a, &auts, true)
}

/// Free group F_r.
pub fn free_group(r: usize) -> GroupPresentation {
    GroupPresentation { gens: r, relators: vec![], models_u: true, meridians: None }
}

/// Free abelian group ℤ^r with all commutator relators.
pub fn free_abelian(r: usize) -> GroupPresentation {
    let mut rels = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            rels.push(Word::commutator(&Word::gen(i), &Word::gen(j)));
        }
    }
    GroupPresentation { gens: r, relators: rels, models_u: true, meridians: None }
}

/// F₂ × F₂ × ℤ on generators x₁, x₂, y₁, y₂, z.
pub fn falk_group() -> GroupPresentation {
    let (x1, x2, y1, y2, z) = (Word::gen(0), Word::gen(1), Word::gen(2), Word::gen(3), Word::gen(4));
    let mut rels = Vec::new();
    for x in [&x1, &x2] {
        for y in [&y1, &y2] {
            rels.push(Word::commutator(x, y));
        }
    }
    for g in [&x1, &x2, &y1, &y2] {
        rels.push(Word::commutator(g, &z));
    }
    GroupPresentation { gens: 5, relators: rels, models_u: true, meridians: None }
}

fn parse_param(name: &str, head: &str) -> Option<usize> {
    name.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')?.trim().parse().ok()
}

/// Look up a named presentation.  Entries other than falk_U carry meridian classes.
pub fn presentation_catalog(name: &str) -> Result<GroupPresentation> {
    if let Some(n) = parse_param(name, "pencil_U") {
        if n < 1 {
            return Err(MilnorError::UnknownName(name.into()));
        }
        let mer = (0..n - 1).map(|i| unit(n, i)).collect();
        return free_group(n - 1).with_meridians(mer);
    }
    if let Some(n) = parse_param(name, "boolean_U") {
        if n < 1 {
            return Err(MilnorError::UnknownName(name.into()));
        }
        let mer = (0..n - 1).map(|i| unit(n, i)).collect();
        return free_abelian(n - 1).with_meridians(mer);
    }
    match name {
        "falk_U" => Ok(falk_group()),
        "braid_U" => {
            let p = fiber_type(3, &BRAID_WORDS)?;
            p.with_meridians(fiber_type_meridians(6, &[4, 3, 1], &[2, 5]))
        }
        "b3_U" => {
            let p = fiber_type(5, &B3_WORDS)?;
            p.with_meridians(fiber_type_meridians(9, &[7, 6, 2, 5, 8], &[0, 3, 1]))
        }
        // Hyperplane order x, y, x−z, x+z, x−y, x+y, y−z, y+z; the deconing line is x+y.
        "deleted_b3_U" => {
            fiber_type(4, &DELETED_B3_WORDS)?.with_meridians(fiber_type_meridians(8, &[6, 3, 2, 7], &[0, 4, 1]))
        }
        _ => Err(MilnorError::UnknownName(name.into())),
    }
}

/// The presentation of π₁(U) for a catalog arrangement, with meridian classes in its hyperplane order.
pub fn presentation_for_arrangement(catalog_name: &str) -> Result<GroupPresentation> {
    if let Some(rest) = catalog_name.strip_prefix("generic(") {
        let args: Option<Vec<usize>> =
            rest.strip_suffix(')').and_then(|s| s.split(',').map(|x| x.trim().parse().ok()).collect());
        return match args.as_deref() {
            Some(&[n, 1]) if n >= 2 => presentation_catalog(&format!("pencil_U({n})")),
            Some(&[n, d]) if d >= 2 && n > d => presentation_catalog(&format!("boolean_U({n})")),
            _ => Err(MilnorError::UnknownName(catalog_name.into())),
        };
    }
    if let Some(n) = parse_param(catalog_name, "pencil") {
        return presentation_catalog(&format!("pencil_U({n})"));
    }
    if let Some(n) = parse_param(catalog_name, "boolean") {
        return presentation_catalog(&format!("boolean_U({n})"));
    }
    match catalog_name {
        "braid" => presentation_catalog("braid_U"),
        "b3" => presentation_catalog("b3_U"),
        "deleted_b3" => presentation_catalog("deleted_b3_U"),
        // Hyperplane order z, x−y, y, x+y, x−z, x+z.
        "falk1" => falk_group().with_meridians(vec![
            unit(6, 1),
            unit(6, 2),
            unit(6, 4),
            unit(6, 5),
            sum_units(6, &[1, 2, 3]),
        ]),
        // Hyperplane order z, x+z, x−z, y+z, y−z, x−y+z.
        "falk2" => falk_group().with_meridians(vec![
            unit(6, 1),
            unit(6, 2),
            unit(6, 3),
            unit(6, 4),
            sum_units(6, &[0, 1, 2, 3, 4]),
        ]),
        _ => Err(MilnorError::MissingCertificate(format!("no presentation is catalogued for {catalog_name}"))),
    }
}
