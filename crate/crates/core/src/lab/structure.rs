use serde::Serialize;

use crate::arrangement::{cone_ideal_generators, enumerate_flats, flat_linear_forms, ideal_generators, FermatConfig};
use crate::error::{Error, Result};
use crate::field::{CyclotomicField, Field, FieldKind, PrimeField, Rationals};
use crate::ideal::{ideal_equality, intersect_all, GroebnerBudget, Ideal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureCheck {
    /// The generator ideal equals the intersection of the cone ideals
    /// over all vertices.
    ConeIntersection,
    /// The generator ideal equals the intersection of the flat ideals.
    GeneratorCompleteness,
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub check: StructureCheck,
    pub config: FermatConfig,
    pub field: String,
    /// `None` when a Groebner budget ran out.
    pub equal: Option<bool>,
    pub components: usize,
    /// Generators of the computed intersection (a Groebner basis).
    pub intersection_size: Option<usize>,
    pub generator_count: usize,
    /// Single cone ideal against the generator ideal; expected unequal.
    pub single_cone_equal: Option<bool>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        let single_ok = match self.check {
            StructureCheck::ConeIntersection => self.single_cone_equal == Some(false),
            StructureCheck::GeneratorCompleteness => true,
        };
        self.equal == Some(true) && single_ok
    }

    pub fn undecided(&self) -> bool {
        self.equal.is_none()
    }
}

fn decided<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::ResourceLimit(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Intersects the cone ideals `I_{N-1,n}(i)`, `i = 0..=N`, and compares
/// with the generator ideal. Needs `N >= 3`.
pub fn verify_cone_intersection<K: Field>(cfg: &FermatConfig, field: K, budget: GroebnerBudget) -> Result<StructureReport> {
    let label = field.kind().to_string();
    let ring = cfg.ring(field);
    let target = Ideal::new(&ring, ideal_generators(cfg, &ring)?)?;
    let cones = (0..cfg.nvars())
        .map(|v| Ideal::new(&ring, cone_ideal_generators(cfg, v, &ring)?))
        .collect::<Result<Vec<_>>>()?;
    let meet = decided(intersect_all(&cones, budget))?;
    let equal = match &meet {
        Some(m) => decided(ideal_equality(m, &target, budget))?,
        None => None,
    };
    let single_cone_equal = decided(ideal_equality(&cones[0], &target, budget))?;
    Ok(StructureReport {
        check: StructureCheck::ConeIntersection,
        config: *cfg,
        field: label,
        equal,
        components: cones.len(),
        intersection_size: meet.map(|m| m.generators().len()),
        generator_count: target.generators().len(),
        single_cone_equal,
    })
}

/// Intersects the ideals of all flats and compares with the generator
/// ideal. The field must contain the `n`-th roots of unity.
pub fn verify_generator_completeness<K: Field>(
    cfg: &FermatConfig,
    field: K,
    budget: GroebnerBudget,
) -> Result<StructureReport> {
    let label = field.kind().to_string();
    let ring = cfg.ring(field);
    let target = Ideal::new(&ring, ideal_generators(cfg, &ring)?)?;
    let flats = enumerate_flats(cfg)
        .iter()
        .map(|flat| {
            let (u, v) = flat_linear_forms(flat, &ring, cfg.degree())?;
            Ideal::new(&ring, vec![u, v])
        })
        .collect::<Result<Vec<_>>>()?;
    let meet = decided(intersect_all(&flats, budget))?;
    let equal = match &meet {
        Some(m) => decided(ideal_equality(m, &target, budget))?,
        None => None,
    };
    Ok(StructureReport {
        check: StructureCheck::GeneratorCompleteness,
        config: *cfg,
        field: label,
        equal,
        components: flats.len(),
        intersection_size: meet.map(|m| m.generators().len()),
        generator_count: target.generators().len(),
        single_cone_equal: None,
    })
}

/// Runs `check` over a field chosen at run time.
pub fn run_structure_check(
    check: StructureCheck,
    cfg: &FermatConfig,
    kind: FieldKind,
    budget: GroebnerBudget,
) -> Result<StructureReport> {
    macro_rules! dispatch {
        ($field:expr) => {
            match check {
                StructureCheck::ConeIntersection => verify_cone_intersection(cfg, $field, budget),
                StructureCheck::GeneratorCompleteness => verify_generator_completeness(cfg, $field, budget),
            }
        };
    }
    match kind {
        FieldKind::Rational => dispatch!(Rationals),
        FieldKind::Prime { p } => dispatch!(PrimeField::new(p)?),
        FieldKind::Cyclotomic { n } => dispatch!(CyclotomicField::new(n)?),
    }
}
