//! Task execution. Every command produces a JSON object; the human-readable
//! output is rendered from the same object.

use invgrass::modalg::{invariance_witness, MatrixAlgebra};
use invgrass::paramspace::{chart_locate, classify_point_in, ff_enumerate, find_separating_element, tangent_space, PointVerdict};
use invgrass::twosided::{classify, classify_product_point, restricted_minpoly, restricted_minpoly_matches};
use invgrass::wedgeinv::{lambda_a_chart_grid, lambda_a_sampled, BlockShape, InvariantWedgeSpace, DEFAULT_ROUNDS};
use invgrass::{Error, Field, FieldTower, PrimeField, Subspace};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::problem::{Loaded, PrimeProblem, TaskArgs, TowerProblem};


#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A negative verdict resting on a sampled lower bound for `∧^m_A`.
    SampledNegative,
}

pub type Outcome = Result<(Value, Status), CliError>;

/// What a problem must provide for the commands shared by both field kinds.
trait Instance {
    type F: Field;
    fn base(&self) -> &Self::F;
    fn algebra(&self) -> &MatrixAlgebra<Self::F>;
    fn shape(&self) -> Option<BlockShape>;
    fn subspace(&self, name: &str) -> Result<&Subspace<Self::F>, CliError>;
    fn lift_algebra(&self, target: &Self::F) -> Result<MatrixAlgebra<Self::F>, Error>;
    fn lift_lambda(&self, l: &InvariantWedgeSpace<Self::F>, target: &Self::F) -> Result<Subspace<Self::F>, Error>;
}

impl Instance for TowerProblem {
    type F = FieldTower;
    fn base(&self) -> &FieldTower {
        &self.k
    }
    fn algebra(&self) -> &MatrixAlgebra<FieldTower> {
        &self.algebra
    }
    fn shape(&self) -> Option<BlockShape> {
        self.shape
    }
    fn subspace(&self, name: &str) -> Result<&Subspace<FieldTower>, CliError> {
        self.subspaces.get(name).ok_or_else(|| CliError::Malformed(format!("unknown subspace `{name}`")))
    }
    fn lift_algebra(&self, target: &FieldTower) -> Result<MatrixAlgebra<FieldTower>, Error> {
        self.algebra.lift_to(target)
    }
    fn lift_lambda(&self, l: &InvariantWedgeSpace<FieldTower>, target: &FieldTower) -> Result<Subspace<FieldTower>, Error> {
        l.lifted_basis(target)
    }
}

impl Instance for PrimeProblem {
    type F = PrimeField;
    fn base(&self) -> &PrimeField {
        &self.f
    }
    fn algebra(&self) -> &MatrixAlgebra<PrimeField> {
        &self.algebra
    }
    fn shape(&self) -> Option<BlockShape> {
        self.shape
    }
    fn subspace(&self, name: &str) -> Result<&Subspace<PrimeField>, CliError> {
        self.subspaces.get(name).ok_or_else(|| CliError::Malformed(format!("unknown subspace `{name}`")))
    }
    fn lift_algebra(&self, _: &PrimeField) -> Result<MatrixAlgebra<PrimeField>, Error> {
        Ok(self.algebra.clone())
    }
    fn lift_lambda(&self, l: &InvariantWedgeSpace<PrimeField>, _: &PrimeField) -> Result<Subspace<PrimeField>, Error> {
        Ok(l.basis().clone())
    }
}

pub fn run_task(problem: &Loaded, command: &str, args: &TaskArgs, seed: u64) -> Outcome {
    match problem {
        Loaded::Tower(t) => match command {
            "classify" => classify_cmd(t, args),
            "separate" => separate_cmd(t, args),
            _ => shared(t.as_ref(), command, args, seed),
        },
        Loaded::Prime(p) => match command {
            "classify" | "separate" => Err(CliError::Malformed(format!("`{command}` needs a number field"))),
            _ => shared(p, command, args, seed),
        },
    }
}

fn shared<P: Instance>(p: &P, command: &str, args: &TaskArgs, seed: u64) -> Outcome {
    match command {
        "check-invariant" => check_invariant(p, args),
        "check-generated" => {
            let (v, name) = verdict(p, args, seed)?;
            let status = status_of(&v);
            let out = json!({
                "subspace": name,
                "generated": v.is_g,
                "provenance": v.g_provenance,
                "possible_false_negative": v.possible_false_negative,
                "witness": v.g_witness,
            });
            Ok((out, status))
        }
        "check-h" => {
            let (v, name) = verdict(p, args, seed)?;
            let status = status_of(&v);
            let mut out = serde_json::to_value(&v).expect("verdicts serialize");
            out["subspace"] = json!(name);
            Ok((out, status))
        }
        "lambda-a" => {
            let m = args.m.ok_or_else(|| CliError::Malformed("`lambda-a` needs --m".into()))?;
            let l = lambda(p, m, args, seed)?;
            let f = p.base();
            let out = json!({
                "m": m,
                "dim": l.dim(),
                "provenance": l.provenance(),
                "labels": (0..l.index().len()).map(|i| l.index().label(i)).collect::<Vec<_>>(),
                "basis": rows(f, &l.basis().basis_vectors()),
                "certificates": l.certificates().len(),
                "skipped_points": l.skipped_points(),
            });
            Ok((out, Status::Ok))
        }
        "tangent" => tangent(p, args, seed),
        "charts" => charts(p, args),
        "oracle-ff" => oracle_ff(p, args),
        "verify-paper" => Err(CliError::Malformed("`verify-paper` cannot be a task".into())),
        other => Err(CliError::Malformed(format!("unknown command `{other}`"))),
    }
}

fn status_of(v: &PointVerdict) -> Status {
    if v.possible_false_negative {
        Status::SampledNegative
    } else {
        Status::Ok
    }
}

fn rows<F: Field>(f: &F, vs: &[Vec<F::Elem>]) -> Vec<Vec<String>> {
    vs.iter().map(|v| v.iter().map(|x| f.format(x)).collect()).collect()
}

fn strings<F: Field>(f: &F, v: &[F::Elem]) -> Vec<String> {
    v.iter().map(|x| f.format(x)).collect()
}

fn named_subspace<'a, P: Instance>(p: &'a P, args: &TaskArgs) -> Result<(&'a Subspace<P::F>, String), CliError> {
    let name = args.subspace.clone().ok_or_else(|| CliError::Malformed("this command needs --subspace".into()))?;
    Ok((p.subspace(&name)?, name))
}

/// `∧^m_A` over the base field by the requested route. Without a route: the
/// chart grid when the problem's shape fits `m`, enumeration over a small
/// finite field, and sampling otherwise.
fn lambda<P: Instance>(p: &P, m: usize, args: &TaskArgs, seed: u64) -> Result<InvariantWedgeSpace<P::F>, CliError> {
    let alg = p.algebra();
    let rounds = args.rounds.unwrap_or(DEFAULT_ROUNDS);
    let shape = p.shape().filter(|s| s.m == m);
    let route = match args.route.as_deref() {
        Some(r) => r,
        None if shape.is_some() => "grid",
        None if p.base().order().is_some() => "enumerate",
        None => "sampled",
    };
    match route {
        "grid" => {
            let shape = shape.ok_or_else(|| CliError::Malformed(format!("the grid route needs a shape with m = {m}")))?;
            Ok(lambda_a_chart_grid(alg, shape)?)
        }
        "sampled" => Ok(lambda_a_sampled(alg, m, seed, rounds)?),
        "enumerate" => match ff_enumerate(alg, m, None) {
            Ok(r) => Ok(r.lambda),
            Err(Error::TooLarge { .. }) if args.route.is_none() => Ok(lambda_a_sampled(alg, m, seed, rounds)?),
            Err(e) => Err(e.into()),
        },
        other => Err(CliError::Malformed(format!("unknown route `{other}` (expected grid, sampled or enumerate)"))),
    }
}

fn verdict<P: Instance>(p: &P, args: &TaskArgs, seed: u64) -> Result<(PointVerdict, String), CliError> {
    let (m, name) = named_subspace(p, args)?;
    let l = lambda(p, m.dim(), args, seed)?;
    let target = m.field();
    let alg = p.lift_algebra(target)?;
    let basis = p.lift_lambda(&l, target)?;
    Ok((classify_point_in(m, &alg, &basis, l.provenance())?, name))
}

fn check_invariant<P: Instance>(p: &P, args: &TaskArgs) -> Outcome {
    let (m, name) = named_subspace(p, args)?;
    let alg = p.lift_algebra(m.field())?;
    let witness = invariance_witness(m, &alg)?;
    let out = json!({
        "subspace": name,
        "dim": m.dim(),
        "invariant": witness.is_none(),
        "witness": witness.map(|(row, gen)| json!({"row": row + 1, "generator": gen + 1})),
    });
    Ok((out, Status::Ok))
}

fn tangent<P: Instance>(p: &P, args: &TaskArgs, seed: u64) -> Outcome {
    let (e, name) = named_subspace(p, args)?;
    if e.field() != p.base() {
        return Err(CliError::Malformed(format!("tangent spaces are computed at points over the base field; `{name}` is not")));
    }
    let l = lambda(p, e.dim(), args, seed)?;
    let t = tangent_space(e, p.algebra(), &l)?;
    let f = p.base();
    let expected = p.shape().filter(|s| s.m == e.dim()).map(|s| s.l * s.m - s.m);
    let out = json!({
        "subspace": name,
        "dim_g": t.dim_g,
        "dim_f": t.dim_f,
        "expected": expected,
        "provenance": l.provenance(),
        "complement": rows(f, &t.complement.basis_vectors()),
        "basis_g": t.basis_g.iter().map(|psi| rows(f, psi)).collect::<Vec<_>>(),
    });
    let status = if l.provenance().is_exact() || expected.map_or(true, |x| x == t.dim_g) { Status::Ok } else { Status::SampledNegative };
    Ok((out, status))
}

fn charts<P: Instance>(p: &P, args: &TaskArgs) -> Outcome {
    let shape = p.shape().ok_or_else(|| CliError::Malformed("`charts` needs a shape in the problem".into()))?;
    let Some(name) = args.subspace.clone() else {
        let out = json!({
            "l": shape.l,
            "m": shape.m,
            "charts": shape.l,
            "parameters_per_chart": shape.num_params(),
        });
        return Ok((out, Status::Ok));
    };
    let m = p.subspace(&name)?;
    let f = m.field();
    let alg = p.lift_algebra(f)?;
    let out = match chart_locate(m, &alg, shape)? {
        Some(loc) => json!({
            "subspace": name,
            "chart": loc.chart + 1,
            "coords": strings(f, &loc.coords),
            "generator": strings(f, &loc.generator),
        }),
        None => json!({ "subspace": name, "chart": null }),
    };
    Ok((out, Status::Ok))
}

fn oracle_ff<P: Instance>(p: &P, args: &TaskArgs) -> Outcome {
    let m = args.m.ok_or_else(|| CliError::Malformed("`oracle-ff` needs --m".into()))?;
    let f = p.base();
    let shape = p.shape().filter(|s| s.m == m);
    let r = ff_enumerate(p.algebra(), m, shape)?;
    let basis_of = |i: &usize| rows(f, &r.subspaces[*i].basis_vectors());
    let out = json!({
        "m": m,
        "total": r.total,
        "invariant": r.f_points.iter().map(basis_of).collect::<Vec<_>>(),
        "generated_count": r.g_points.len(),
        "invariant_count": r.f_points.len(),
        "lambda_dim": r.lambda.dim(),
        "uncovered": r.uncovered.map(|u| u.iter().map(basis_of).collect::<Vec<_>>()),
    });
    Ok((out, Status::Ok))
}

fn classify_cmd(t: &TowerProblem, args: &TaskArgs) -> Outcome {
    let v = t.two_sided.as_ref().ok_or_else(|| CliError::Malformed("`classify` needs a two-sided problem (`phi`)".into()))?;
    let cert_name = args.certificates.as_deref().unwrap_or("default");
    let certs = t
        .certificates
        .get(cert_name)
        .ok_or_else(|| CliError::Malformed(format!("unknown certificate set `{cert_name}`")))?;
    let orbits: Vec<_> = t.orbits.iter().map(|(_, o)| o.clone()).collect();
    let cls = classify(v, certs, &orbits)?;
    let orbit_name = |i: Option<usize>| i.map(|i| t.orbits[i].0.clone());
    let mut out = json!({
        "rank": cls.rank.terms.iter().map(|r| json!({
            "simple": r.simple,
            "orbit": orbit_name(r.orbit),
            "size": r.size,
            "multiplicity": r.multiplicity,
        })).collect::<Vec<_>>(),
        "components": cls.components.iter().map(|c| json!({
            "certificate": c.certificate.format("x"),
            "dim": c.socle.dim(),
            "primary_dim": c.full.dim(),
            "semisimple": c.is_semisimple(),
        })).collect::<Vec<_>>(),
        "semisimple": cls.semisimple,
        "dimension": cls.rank.dimension(),
    });
    let mut status = Status::Ok;
    if let Some(name) = &args.subspace {
        let m = t.subspace(name)?;
        let rank = match &args.rank {
            Some(r) => r.clone(),
            None if cls.components.len() == 1 => vec![m.dim() / cls.components[0].simple_dim().max(1)],
            None => return Err(CliError::Malformed("--rank is needed when there are several components".into())),
        };
        let pv = classify_product_point(v, &cls, m, &rank)?;
        if pv.components.iter().any(|c| c.possible_false_negative) {
            status = Status::SampledNegative;
        }
        out["subspace"] = json!(name);
        out["is_f"] = json!(pv.is_f);
        out["is_g"] = json!(pv.is_g);
        out["is_h"] = json!(pv.is_h);
        out["empty_functor"] = json!(pv.empty_functor);
        out["product"] = serde_json::to_value(&pv).expect("verdicts serialize");
        let simple = rank.iter().enumerate().filter(|(_, &r)| r > 0).map(|(j, &r)| (j, r)).collect::<Vec<_>>();
        if let [(j, 1)] = simple[..] {
            if let Some(o) = cls.components[j].orbit {
                let (check, poly) = match restricted_minpoly_matches(v, m, &t.orbits[o].1) {
                    Ok(b) => (json!(b), json!(restricted_minpoly(v, m)?.format("x"))),
                    Err(Error::NotInvariant) => (Value::Null, Value::Null),
                    Err(e) => return Err(e.into()),
                };
                out["restricted_minpoly"] = poly;
                out["restricted_minpoly_matches"] = check;
            }
        }
    }
    Ok((out, status))
}

fn separate_cmd(t: &TowerProblem, args: &TaskArgs) -> Outcome {
    let names = args.embeddings.as_ref().ok_or_else(|| CliError::Malformed("`separate` needs --embeddings".into()))?;
    let multiset = args.multiset.as_ref().ok_or_else(|| CliError::Malformed("`separate` needs --multiset".into()))?;
    let embs = names
        .iter()
        .map(|n| t.embeddings.get(n).cloned().ok_or_else(|| CliError::Malformed(format!("unknown embedding `{n}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    let s = find_separating_element(&embs, multiset)?;
    let out = json!({
        "a": s.a.to_string(),
        "lhs": s.lhs.to_string(),
        "rhs": s.rhs.to_string(),
        "separates": s.lhs != s.rhs,
    });
    Ok((out, Status::Ok))
}
