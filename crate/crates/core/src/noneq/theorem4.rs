use super::band::entropy_band;
use super::embedded::EmbeddedModel;
use crate::error::{Error, Result};
use crate::report::{CheckRecord, Report, Status};
use crate::scalar::Real;

/// Outcome of one evaluated condition.
#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub code: &'static str,
    pub holds: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem4Report {
    /// `ii`: zero band width, `iv`: comparability on `Γ̂`,
    /// `v`: comparability with `Γ`, `vi`: equivalence to some point of `Γ`.
    pub conditions: Vec<Condition>,
}

impl Theorem4Report {
    pub fn condition(&self, code: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.code == code)
    }

    /// All evaluated conditions agree.
    pub fn consistent(&self) -> bool {
        self.conditions.windows(2).all(|w| w[0].holds == w[1].holds)
    }

    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    /// Condition values as info records, plus one pass/fail record for
    /// their agreement.
    pub fn to_report(&self) -> Report {
        let mut r = Report::default();
        for c in &self.conditions {
            let w = match &c.witness {
                Some(w) => format!("holds={};{w}", c.holds),
                None => format!("holds={}", c.holds),
            };
            r.push(CheckRecord::new(
                format!("thm4.{}", c.code),
                Status::Info,
                c.checked,
                Some(w),
            ));
        }
        for code in ["i", "iii"] {
            let holds = self.condition("ii").map(|c| c.holds).unwrap_or(false);
            r.push(CheckRecord::new(
                format!("thm4.{code}"),
                Status::Info,
                0,
                Some(format!("holds={holds};implied-by=ii")),
            ));
        }
        let n = self.conditions.iter().map(|c| c.checked).sum();
        let w = (!self.consistent()).then(|| {
            self.conditions
                .iter()
                .map(|c| format!("{}={}", c.code, c.holds))
                .collect::<Vec<_>>()
                .join(",")
        });
        r.push(CheckRecord::new(
            "thm4.consistent",
            Status::from_bool(self.consistent()),
            n,
            w,
        ));
        r
    }
}

/// Evaluates the comparability conditions on a finite model and reports
/// whether they agree.
///
/// Errors when the model breaks the premises: the relation on `Γ` must be
/// described by `S`, every state needs equilibrium states below and above,
/// and every nonzero band must contain the entropy of some equilibrium
/// state strictly inside it.
pub fn verify_theorem4<F: Real, M: EmbeddedModel<F> + ?Sized>(model: &M, tol: F) -> Result<Theorem4Report> {
    let states = model
        .states()
        .ok_or(Error::MissingCapability("finite state enumeration"))?;
    let eq: Vec<&M::State> = states.iter().filter(|x| model.is_equilibrium(x)).collect();

    for a in &eq {
        for b in &eq {
            if !model.same_space(a, b) {
                continue;
            }
            let (sa, sb) = (model.entropy(a)?, model.entropy(b)?);
            if model.precedes(a, b)? != (sa <= sb + tol) {
                return Err(Error::Premise(format!(
                    "order of `{}` and `{}` on the equilibrium states disagrees with the entropy",
                    model.describe(a),
                    model.describe(b)
                )));
            }
        }
    }

    let mut bands = Vec::with_capacity(states.len());
    for x in &states {
        let band = entropy_band(model, x)?;
        if band.delta_s > tol {
            let mut inside = false;
            for z in &eq {
                if model.same_space(x, z) {
                    let s = model.entropy(z)?;
                    if s > band.s_minus + tol && s < band.s_plus - tol {
                        inside = true;
                        break;
                    }
                }
            }
            if !inside {
                return Err(Error::Premise(format!(
                    "no equilibrium entropy strictly inside the band of `{}`",
                    model.describe(x)
                )));
            }
        }
        bands.push(band);
    }

    let mut ii = Condition {
        code: "ii",
        holds: true,
        checked: 0,
        witness: None,
    };
    for (x, band) in states.iter().zip(&bands) {
        ii.checked += 1;
        if band.delta_s > tol && ii.holds {
            ii.holds = false;
            ii.witness = Some(format!(
                "x={},s-={},s+={}",
                model.describe(x),
                band.s_minus,
                band.s_plus
            ));
        }
    }

    let mut iv = Condition {
        code: "iv",
        holds: true,
        checked: 0,
        witness: None,
    };
    let mut v = Condition {
        code: "v",
        holds: true,
        checked: 0,
        witness: None,
    };
    for x in &states {
        for y in &states {
            if !model.same_space(x, y) {
                continue;
            }
            let comparable = model.precedes(x, y)? || model.precedes(y, x)?;
            iv.checked += 1;
            if !comparable && iv.holds {
                iv.holds = false;
                iv.witness = Some(format!("x={},y={}", model.describe(x), model.describe(y)));
            }
            if model.is_equilibrium(y) {
                v.checked += 1;
                if !comparable && v.holds {
                    v.holds = false;
                    v.witness = Some(format!(
                        "x={},z={},s(z)={}",
                        model.describe(x),
                        model.describe(y),
                        model.entropy(y)?
                    ));
                }
            }
        }
    }

    let mut vi = Condition {
        code: "vi",
        holds: true,
        checked: 0,
        witness: None,
    };
    for x in &states {
        vi.checked += 1;
        let mut found = false;
        for z in &eq {
            if model.same_space(x, z) && model.precedes(x, z)? && model.precedes(z, x)? {
                found = true;
                break;
            }
        }
        if !found && vi.holds {
            vi.holds = false;
            vi.witness = Some(format!("x={}", model.describe(x)));
        }
    }

    Ok(Theorem4Report {
        conditions: vec![ii, iv, v, vi],
    })
}
