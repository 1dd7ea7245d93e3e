//! Named groups available to a run: the builtin corpus plus any catalogue
//! files given on the command line.

use std::path::Path;
use std::sync::Arc;

use proflat_core::arith::is_prime;
use proflat_core::construct::*;
use proflat_core::format::parse_catalogue;
use proflat_core::{Error, FiniteGroup, Limits};
use serde::Serialize;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Builtin,
    File,
}

#[derive(Debug, Clone)]
pub struct CatalogueEntry {
    pub name: String,
    pub source: Source,
    pub group: Arc<FiniteGroup>,
}

/// Entries in insertion order; names are unique.
#[derive(Debug, Clone, Default)]
pub struct Catalogue {
    entries: Vec<CatalogueEntry>,
}

type Build = Box<dyn Fn(&Limits) -> proflat_core::Result<Arc<FiniteGroup>>>;

fn builtin_recipes() -> Vec<(String, Build)> {
    let mut out: Vec<(String, Build)> = Vec::new();
    for n in 1..=64 {
        out.push((format!("C{n}"), Box::new(move |l| cyclic(n, l))));
    }
    for (p, max_k) in [(2, 6), (3, 4), (5, 2), (7, 2)] {
        for k in 2..=max_k {
            out.push((
                format!("C{p}^{k}"),
                Box::new(move |l| elementary_abelian(p, k, l)),
            ));
        }
    }
    for order in (8..=32).step_by(2) {
        out.push((format!("D{order}"), Box::new(move |l| dihedral(order, l))));
    }
    out.push(("Q8".into(), Box::new(quaternion8)));
    out.push(("M16".into(), Box::new(|l| modular_p_group(2, 4, l))));
    out.push(("S3".into(), Box::new(|l| symmetric(3, l))));
    out.push(("S4".into(), Box::new(|l| symmetric(4, l))));
    out.push(("A4".into(), Box::new(|l| alternating(4, l))));
    out.push(("A5".into(), Box::new(|l| alternating(5, l))));
    out.push((
        "C3:C4".into(),
        Box::new(|l| semidirect_cyclic(4, &[3], 2, l)),
    ));
    out.push((
        "S3xC5".into(),
        Box::new(|l| direct_product(&*symmetric(3, l)?, &*cyclic(5, l)?, l)),
    ));
    out.push((
        "C4xC3".into(),
        Box::new(|l| direct_product(&*cyclic(4, l)?, &*cyclic(3, l)?, l)),
    ));
    for p in (3..=31).filter(|&p| is_prime(p)) {
        for q in (2..p).filter(|&q| is_prime(q) && (p - 1) % q == 0 && p * q <= 64) {
            out.push((
                format!("C{p}:C{q}"),
                Box::new(move |l| nonabelian_pq(p, q, l)),
            ));
        }
    }
    out
}

impl Catalogue {
    /// The fixed builtin corpus. Groups above `limits.max_order` are left
    /// out rather than failing the whole catalogue.
    pub fn builtin(limits: &Limits) -> Result<Catalogue> {
        let mut cat = Catalogue::default();
        for (name, build) in builtin_recipes() {
            match build(limits) {
                Ok(g) => cat.push(CatalogueEntry {
                    group: g.renamed(name.clone()),
                    name,
                    source: Source::Builtin,
                })?,
                Err(Error::Resource { .. }) => {}
                Err(e) => return Err(e.into()),
            }
        }
        Ok(cat)
    }

    fn push(&mut self, entry: CatalogueEntry) -> Result<()> {
        if self.get(&entry.name).is_some() {
            return Err(HarnessError::DuplicateName(entry.name));
        }
        self.entries.push(entry);
        Ok(())
    }

    /// Adds every record of a catalogue text; returns the new names.
    pub fn add_text(&mut self, text: &str, limits: &Limits) -> Result<Vec<String>> {
        let groups = parse_catalogue(text, limits)?;
        let mut names = Vec::new();
        for g in groups {
            names.push(g.name().to_string());
            self.push(CatalogueEntry {
                name: g.name().to_string(),
                source: Source::File,
                group: g,
            })?;
        }
        Ok(names)
    }

    pub fn add_file(&mut self, path: &Path, limits: &Limits) -> Result<Vec<String>> {
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        self.add_text(&text, limits).map_err(|e| match e {
            HarnessError::Core(source) => HarnessError::File {
                path: path.to_path_buf(),
                source,
            },
            other => other,
        })
    }

    pub fn entries(&self) -> &[CatalogueEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&CatalogueEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn up_to(&self, max_order: usize) -> Vec<&CatalogueEntry> {
        self.entries
            .iter()
            .filter(|e| e.group.order() <= max_order)
            .collect()
    }

    /// A catalogue entry, or a group built from a name such as `C100`,
    /// `C3^2`, `D20`, `S4`, `A5`, `Q8` or `M32`.
    pub fn resolve(&self, name: &str, limits: &Limits) -> Result<Arc<FiniteGroup>> {
        if let Some(e) = self.get(name) {
            return Ok(e.group.clone());
        }
        construct_named(name, limits)
            .ok_or_else(|| HarnessError::UnknownGroup(name.to_string()))?
            .map_err(Into::into)
    }
}

fn construct_named(name: &str, limits: &Limits) -> Option<proflat_core::Result<Arc<FiniteGroup>>> {
    let num = |s: &str| s.parse::<usize>().ok();
    if name == "Q8" {
        return Some(quaternion8(limits));
    }
    let (head, rest) = name.split_at(name.char_indices().nth(1)?.0);
    match head {
        "C" => match rest.split_once('^') {
            Some((p, k)) => Some(elementary_abelian(num(p)?, num(k)?, limits)),
            None => Some(cyclic(num(rest)?, limits)),
        },
        "D" => Some(dihedral(num(rest)?, limits)),
        "S" => Some(symmetric(num(rest)?, limits)),
        "A" => Some(alternating(num(rest)?, limits)),
        "M" => {
            let order = num(rest)?;
            let p = proflat_core::arith::prime_power_base(order)?;
            let n = (order as f64).log(p as f64).round() as u32;
            Some(modular_p_group(p, n, limits))
        }
        _ => None,
    }
    .map(|r| r.map(|g| g.renamed(name)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_names_are_unique_and_groups_have_their_orders() {
        let cat = Catalogue::builtin(&Limits::default()).unwrap();
        assert_eq!(cat.get("C64").unwrap().group.order(), 64);
        assert_eq!(cat.get("C3^4").unwrap().group.order(), 81);
        assert_eq!(cat.get("C11:C5").unwrap().group.order(), 55);
        assert_eq!(cat.get("S3xC5").unwrap().group.order(), 30);
        assert!(cat.get("C31:C3").is_none());
        assert!(cat.entries().iter().all(|e| e.group.name() == e.name));
    }

    #[test]
    fn small_bound_drops_large_groups() {
        let limits = Limits {
            max_order: 24,
            ..Limits::default()
        };
        let cat = Catalogue::builtin(&limits).unwrap();
        assert!(cat.entries().iter().all(|e| e.group.order() <= 24));
        assert!(cat.get("S4").is_some() && cat.get("A5").is_none());
    }

    #[test]
    fn file_entries_must_not_shadow_builtins() {
        let mut cat = Catalogue::builtin(&Limits::default()).unwrap();
        let err = cat
            .add_text("name S3; degree 3; gens (1 2)", &Limits::default())
            .unwrap_err();
        assert!(matches!(err, HarnessError::DuplicateName(n) if n == "S3"));
        let added = cat
            .add_text("name V; degree 4; gens (1 2); (3 4)", &Limits::default())
            .unwrap();
        assert_eq!(added, vec!["V".to_string()]);
        assert_eq!(cat.get("V").unwrap().source, Source::File);
    }

    #[test]
    fn names_outside_the_catalogue_are_constructed() {
        let cat = Catalogue::default();
        let l = Limits::default();
        assert_eq!(cat.resolve("C100", &l).unwrap().order(), 100);
        assert_eq!(cat.resolve("C3^3", &l).unwrap().order(), 27);
        assert_eq!(cat.resolve("D40", &l).unwrap().order(), 40);
        assert_eq!(cat.resolve("M27", &l).unwrap().order(), 27);
        assert!(matches!(
            cat.resolve("X9", &l),
            Err(HarnessError::UnknownGroup(_))
        ));
        assert!(matches!(
            cat.resolve("C5000", &l),
            Err(HarnessError::Core(Error::Resource { .. }))
        ));
    }
}
