use super::band::{entropy_band, EntropyBand};
use super::embedded::EmbeddedModel;
use crate::error::{Error, Result};
use crate::report::{CheckRecord, Report, Status};
use crate::scalar::Real;

type Candidate<'a, F, S> = &'a dyn Fn(&S) -> Result<F>;

pub struct Prop1Options<'a, F: Real, S> {
    /// Extension `Ŝ` to sandwich between `S₋` and `S₊`.
    pub candidate: Option<Candidate<'a, F, S>>,
    /// Run the composition chain on pairs of samples.
    pub composition: bool,
    /// Slack for floating comparisons.
    pub tol: F,
}

impl<F: Real, S> Default for Prop1Options<'_, F, S> {
    fn default() -> Self {
        Prop1Options {
            candidate: None,
            composition: false,
            tol: F::lit(1e-9),
        }
    }
}

struct Tally {
    name: &'static str,
    checked: usize,
    witness: Option<String>,
    skipped: bool,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            checked: 0,
            witness: None,
            skipped: false,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn finish(self) -> CheckRecord {
        let status = if self.skipped {
            Status::NotApplicable
        } else {
            Status::from_bool(self.witness.is_none())
        };
        CheckRecord::new(self.name, status, self.checked, self.witness)
    }
}

/// Checks the structural properties of `S₋`/`S₊` over `samples`:
/// finiteness, agreement on `Γ`, attained witnesses, monotonicity,
/// sufficiency, the super/subadditivity chain and the sandwich for a
/// candidate extension.
pub fn verify_prop1<F: Real, M: EmbeddedModel<F> + ?Sized>(
    model: &M,
    samples: &[M::State],
    opts: &Prop1Options<'_, F, M::State>,
) -> Result<Report> {
    if opts.composition && !model.supports_composition() {
        return Err(Error::MissingCapability("composition"));
    }
    let tol = opts.tol;
    let mut a = Tally::new("prop1.a.finite");
    let mut b = Tally::new("prop1.b.equilibrium");
    let mut c = Tally::new("prop1.c.attained");
    let mut d = Tally::new("prop1.d.monotone");
    let mut e = Tally::new("prop1.e.sufficient");
    let mut f = Tally::new("prop1.f.chain");
    let mut g = Tally::new("prop1.g.sandwich");
    f.skipped = !opts.composition;
    g.skipped = opts.candidate.is_none();

    let mut bands: Vec<Option<EntropyBand<F, M::State>>> = Vec::with_capacity(samples.len());
    for x in samples {
        match entropy_band(model, x) {
            Ok(band) => {
                let finite = band.s_minus.is_finite() && band.s_plus.is_finite();
                a.record(finite, || format!("{}:non-finite", model.describe(x)));
                bands.push(Some(band));
            }
            Err(Error::N2Violated(which)) => {
                a.record(false, || format!("{}:no-equilibrium-{which}", model.describe(x)));
                bands.push(None);
            }
            Err(err) => return Err(err),
        }
    }

    for (x, band) in samples.iter().zip(&bands) {
        let Some(band) = band else { continue };
        let ordered = band.s_minus <= band.s_plus + tol;
        let agrees = if model.is_equilibrium(x) {
            let s = model.entropy(x)?;
            (band.s_minus - s).abs() <= tol && (band.s_plus - s).abs() <= tol
        } else {
            true
        };
        b.record(ordered && agrees, || {
            format!("{}:s-={},s+={}", model.describe(x), band.s_minus, band.s_plus)
        });
        let ok = model.precedes(&band.witness_minus, x)? && model.precedes(x, &band.witness_plus)?;
        c.record(ok, || model.describe(x));

        if let Some(cand) = opts.candidate {
            let s_hat = cand(x)?;
            let ok = band.s_minus <= s_hat + tol && s_hat <= band.s_plus + tol;
            g.record(ok, || {
                format!("{}:{}<={}<={}", model.describe(x), band.s_minus, s_hat, band.s_plus)
            });
        }
    }

    for (i, x) in samples.iter().enumerate() {
        let Some(bx) = &bands[i] else { continue };
        for (j, y) in samples.iter().enumerate() {
            if i == j || !model.same_space(x, y) {
                continue;
            }
            let Some(by) = &bands[j] else { continue };
            let related = model.precedes(x, y)?;
            if related {
                let ok = bx.s_minus <= by.s_minus + tol && bx.s_plus <= by.s_plus + tol;
                d.record(ok, || {
                    format!(
                        "{}->{}:s-({},{}),s+({},{})",
                        model.describe(x),
                        model.describe(y),
                        bx.s_minus,
                        by.s_minus,
                        bx.s_plus,
                        by.s_plus
                    )
                });
            }
            if bx.s_plus <= by.s_minus {
                e.record(related, || format!("{}->{}", model.describe(x), model.describe(y)));
            }
        }
    }

    if opts.composition {
        for (i, x) in samples.iter().enumerate() {
            let Some(bx) = &bands[i] else { continue };
            for (j, y) in samples.iter().enumerate() {
                let Some(by) = &bands[j] else { continue };
                let Some(xy) = model.compose(x, y) else { continue };
                let pair = match entropy_band(model, &xy) {
                    Ok(p) => p,
                    Err(Error::N2Violated(_)) => {
                        f.record(false, || {
                            format!("({},{}):no-band", model.describe(x), model.describe(y))
                        });
                        continue;
                    }
                    Err(err) => return Err(err),
                };
                let chain = [
                    bx.s_minus + by.s_minus,
                    pair.s_minus,
                    pair.s_plus,
                    bx.s_plus + by.s_plus,
                ];
                let ok = chain.windows(2).all(|w| w[0] <= w[1] + tol);
                f.record(ok, || {
                    format!(
                        "({},{}):{},{},{},{}",
                        model.describe(x),
                        model.describe(y),
                        chain[0],
                        chain[1],
                        chain[2],
                        chain[3]
                    )
                });
            }
        }
    }

    let mut report = Report::default();
    for t in [a, b, c, d, e, f, g] {
        report.push(t.finish());
    }
    Ok(report)
}
