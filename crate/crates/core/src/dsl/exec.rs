use super::ast::{BinOp, Command, Expr, Item, Program};
use super::report::{Record, Report};
use crate::error::{Error, Result};
use crate::models::{
    affine_in_params, format_generators, integer_affine_identity, linear_poisson_in, monodromy, product_poisson,
    ratio_constancy, sphere_example_in, sphere_period_model, LieAlgebraData, PeriodModel, PI,
};
use crate::multivector::{is_poisson, DiffForm, Multivector};
use crate::omega::{jet_n, ltimes_bracket, DiracElement, MixedElement};
use crate::symbolic::{ChartContext, Ctx, RatFunc, Q};
use crate::vorobjev::{assemble, chain_map_residual, decompose, moser_path, structure_equations};
use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

/// A runtime value of the DSL.
#[derive(Clone, Debug)]
pub enum Value {
    Scalar(RatFunc),
    Mv(Multivector),
    Form(DiffForm),
    Mixed(MixedElement),
    Bool(bool),
    List(Vec<Value>),
    Periods(PeriodModel),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Mv(_) => "multivector",
            Value::Form(_) => "form",
            Value::Mixed(_) => "mixed element",
            Value::Bool(_) => "boolean",
            Value::List(_) => "list",
            Value::Periods(_) => "period model",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{s}"),
            Value::Mv(m) => write!(f, "{m}"),
            Value::Form(w) => write!(f, "{w}"),
            Value::Mixed(m) => write!(f, "{m}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::List(items) => {
                f.write_str("[")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
            Value::Periods(m) => {
                f.write_str("(")?;
                for (i, p) in m.periods().iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ExecOptions {
    /// Record wall-clock milliseconds per command; otherwise `ms` is 0.
    pub timing: bool,
}

fn mismatch(msg: impl Into<String>) -> Error {
    Error::TypeMismatch(msg.into())
}

/// The chart of a program: declared params plus `PI` when not declared.
pub fn program_context(p: &Program) -> Result<Ctx> {
    let mut params = p.chart.params.clone();
    if !params.iter().any(|s| s == PI) {
        params.push(PI.to_string());
    }
    ChartContext::new(&p.chart.base, &p.chart.fiber, &params)
}

struct Env {
    ctx: Ctx,
    vars: HashMap<String, Result<Value>>,
}

/// An integer literal, possibly negated.
fn int_literal(e: &Expr) -> Option<i32> {
    match e {
        Expr::Num(n) => i32::try_from(n).ok(),
        Expr::Neg(inner) => int_literal(inner).map(|n| -n),
        _ => None,
    }
}

fn to_mixed(v: &Value) -> Result<MixedElement> {
    match v {
        Value::Scalar(s) => Ok(MixedElement::scalar(s.clone())),
        Value::Mv(m) => Ok(MixedElement::from_multivector(m)),
        Value::Form(w) => MixedElement::from_form(w),
        Value::Mixed(m) => Ok(m.clone()),
        other => Err(mismatch(format!("expected a mixed element, found a {}", other.kind()))),
    }
}

fn to_form(v: &Value) -> Result<DiffForm> {
    match v {
        Value::Scalar(s) => Ok(DiffForm::scalar(s.clone())),
        Value::Form(w) => Ok(w.clone()),
        Value::Mixed(m) => m.to_form(),
        other => Err(mismatch(format!("expected a form, found a {}", other.kind()))),
    }
}

fn to_mv(v: &Value) -> Result<Multivector> {
    match v {
        Value::Scalar(s) => Ok(Multivector::scalar(s.clone())),
        Value::Mv(m) => Ok(m.clone()),
        Value::Mixed(m) => m.to_multivector(),
        other => Err(mismatch(format!("expected a multivector, found a {}", other.kind()))),
    }
}

fn to_scalar(v: &Value) -> Result<RatFunc> {
    match v {
        Value::Scalar(s) => Ok(s.clone()),
        other => Err(mismatch(format!("expected a scalar, found a {}", other.kind()))),
    }
}

fn to_dirac(v: &Value) -> Result<DiracElement> {
    match v {
        Value::Mv(m) => decompose(m),
        Value::Mixed(m) => DiracElement::from_mixed(m),
        other => Err(mismatch(format!(
            "expected a bivector or Dirac element, found a {}",
            other.kind()
        ))),
    }
}

fn to_periods(v: &Value) -> Result<PeriodModel> {
    match v {
        Value::Periods(m) => Ok(m.clone()),
        other => Err(mismatch(format!("expected a period model, found a {}", other.kind()))),
    }
}

fn scale(v: &Value, s: &RatFunc) -> Result<Value> {
    Ok(match v {
        Value::Scalar(x) => Value::Scalar(x.mul(s)),
        Value::Mv(m) => Value::Mv(m.scale(s)),
        Value::Form(w) => Value::Form(w.scale(s)),
        Value::Mixed(m) => Value::Mixed(m.scale(s)),
        other => return Err(mismatch(format!("cannot scale a {}", other.kind()))),
    })
}

fn add(a: &Value, b: &Value) -> Result<Value> {
    use Value::*;
    Ok(match (a, b) {
        (Scalar(x), Scalar(y)) => Scalar(x.add(y)),
        (Mv(_), Mv(_) | Scalar(_)) | (Scalar(_), Mv(_)) => Mv(to_mv(a)?.try_add(&to_mv(b)?)?),
        (Form(_), Form(_) | Scalar(_)) | (Scalar(_), Form(_)) => Form(to_form(a)?.try_add(&to_form(b)?)?),
        _ => Mixed(to_mixed(a)?.try_add(&to_mixed(b)?)?),
    })
}

fn neg(a: &Value) -> Result<Value> {
    Ok(match a {
        Value::Scalar(x) => Value::Scalar(x.neg()),
        Value::Mv(m) => Value::Mv(m.neg()),
        Value::Form(w) => Value::Form(w.neg()),
        Value::Mixed(m) => Value::Mixed(m.neg()),
        other => return Err(mismatch(format!("cannot negate a {}", other.kind()))),
    })
}

fn wedge(a: &Value, b: &Value) -> Result<Value> {
    use Value::*;
    match (a, b) {
        (Scalar(s), _) => scale(b, s),
        (_, Scalar(s)) => scale(a, s),
        (Mv(x), Mv(y)) => Ok(Mv(x.try_wedge(y)?)),
        (Form(x), Form(y)) => Ok(Form(x.try_wedge(y)?)),
        _ => Ok(Mixed(to_mixed(a)?.wedge(&to_mixed(b)?)?)),
    }
}

fn tensor(a: &Value, b: &Value) -> Result<Value> {
    Ok(Value::Mixed(MixedElement::tensor(&to_form(a)?, &to_mv(b)?)?))
}

fn no_args(name: &str, args: &[Expr]) -> Result<()> {
    if args.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidElement(format!("{name} takes no arguments")))
    }
}

impl Env {
    fn lookup(&self, name: &str) -> Result<Value> {
        if let Some(v) = self.vars.get(name) {
            return v.clone();
        }
        match name {
            "true" => return Ok(Value::Bool(true)),
            "false" => return Ok(Value::Bool(false)),
            _ => {}
        }
        if let Some(v) = self.ctx.var_index(name) {
            return Ok(Value::Scalar(RatFunc::var(&self.ctx, v)));
        }
        self.catalog(name, &[])
    }

    fn coord(&self, name: &str) -> Result<usize> {
        self.ctx
            .var_index(name)
            .and_then(|v| self.ctx.var_coord(v))
            .ok_or_else(|| Error::UnknownVariable(name.into()))
    }

    fn catalog(&self, name: &str, args: &[Expr]) -> Result<Value> {
        let lie = |g: LieAlgebraData| -> Result<Value> {
            no_args(name, args)?;
            Ok(Value::Mv(linear_poisson_in(&g, &self.ctx)?))
        };
        match name {
            "so3" => lie(LieAlgebraData::so3()),
            "heisenberg3" => lie(LieAlgebraData::heisenberg3()),
            "aff1" => lie(LieAlgebraData::aff1()),
            "sphere_periods" => {
                no_args(name, args)?;
                Ok(Value::Periods(sphere_period_model()))
            }
            "product" => match args {
                [a, b] => Ok(Value::Mv(product_poisson(
                    &to_mv(&self.eval(a)?)?,
                    &to_mv(&self.eval(b)?)?,
                )?)),
                _ => Err(Error::InvalidElement("product takes two arguments".into())),
            },
            "sphere_so3" => {
                let deformed = match args {
                    [] => false,
                    [e] => match self.eval(e)? {
                        Value::Bool(b) => b,
                        other => return Err(mismatch(format!("expected a boolean, found a {}", other.kind()))),
                    },
                    _ => return Err(Error::InvalidElement("sphere_so3 takes one argument".into())),
                };
                Ok(Value::Mv(sphere_example_in(&self.ctx, deformed)?))
            }
            "period_model" => self.period_model(args),
            _ => Err(Error::UnknownVariable(name.into())),
        }
    }

    /// `period_model([t1, ..], P1, P2, ..)` over the listed parameters.
    fn period_model(&self, args: &[Expr]) -> Result<Value> {
        let Some((Expr::List(names), periods)) = args.split_first() else {
            return Err(Error::InvalidElement(
                "period_model expects a parameter list first".into(),
            ));
        };
        let mut transverse = Vec::new();
        for n in names {
            match n {
                Expr::Var(s) if self.ctx.var_index(s).is_some_and(|v| self.ctx.is_param(v)) && s != PI => {
                    transverse.push(s.clone())
                }
                other => return Err(Error::InvalidElement(format!("'{other}' is not a chart parameter"))),
            }
        }
        let target = PeriodModel::context(&transverse)?;
        let values = periods
            .iter()
            .map(|e| to_scalar(&self.eval(e)?)?.embed(&target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Value::Periods(PeriodModel::new(&target, values)?))
    }

    fn eval(&self, e: &Expr) -> Result<Value> {
        match e {
            Expr::Num(n) => Ok(Value::Scalar(RatFunc::constant(&self.ctx, Q::from_integer(n.clone())))),
            Expr::Var(name) => self.lookup(name),
            Expr::Vector(c) => Ok(Value::Mv(Multivector::basis(&self.ctx, &[self.coord(c)?]))),
            Expr::Form(c) => Ok(Value::Form(DiffForm::basis(&self.ctx, &[self.coord(c)?]))),
            Expr::Neg(a) => neg(&self.eval(a)?),
            Expr::Call(name, args) => self.catalog(name, args),
            Expr::List(items) => Ok(Value::List(items.iter().map(|i| self.eval(i)).collect::<Result<_>>()?)),
            Expr::Bin(op, a, b) => {
                let lhs = self.eval(a)?;
                if *op == BinOp::Caret {
                    if let (Value::Scalar(s), Some(k)) = (&lhs, int_literal(b)) {
                        return Ok(Value::Scalar(s.pow(k)?));
                    }
                }
                let rhs = self.eval(b)?;
                match op {
                    BinOp::Add => add(&lhs, &rhs),
                    BinOp::Sub => add(&lhs, &neg(&rhs)?),
                    BinOp::Mul => match (&lhs, &rhs) {
                        (Value::Scalar(s), _) => scale(&rhs, s),
                        (_, Value::Scalar(s)) => scale(&lhs, s),
                        _ => Err(mismatch(format!(
                            "'*' needs a scalar factor, found a {} and a {}; use '^' to wedge",
                            lhs.kind(),
                            rhs.kind()
                        ))),
                    },
                    BinOp::Div => scale(&lhs, &to_scalar(&rhs)?.inv()?),
                    BinOp::Caret => wedge(&lhs, &rhs),
                    BinOp::Tensor => tensor(&lhs, &rhs),
                }
            }
        }
    }

    fn point(&self, e: &Expr) -> Result<Vec<Q>> {
        let items = match self.eval(e)? {
            Value::List(items) => items,
            v @ Value::Scalar(_) => vec![v],
            other => return Err(mismatch(format!("expected a point, found a {}", other.kind()))),
        };
        items
            .iter()
            .map(|v| {
                to_scalar(v)?
                    .as_constant()
                    .ok_or_else(|| Error::InvalidElement("point coordinates must be rational constants".into()))
            })
            .collect()
    }
}

/// What a command produced before it becomes a report record.
struct Outcome {
    residual: Option<String>,
    value: Option<String>,
}

impl Outcome {
    fn residual(r: impl fmt::Display, value: Option<String>) -> Self {
        Outcome {
            residual: Some(r.to_string()),
            value,
        }
    }

    fn value(v: impl fmt::Display) -> Self {
        Outcome {
            residual: None,
            value: Some(v.to_string()),
        }
    }
}

fn run_command(env: &Env, cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Jacobi(e) => {
            let check = is_poisson(&to_mv(&env.eval(e)?)?)?;
            Ok(Outcome::residual(check.residual, None))
        }
        Command::Decompose(e) => {
            let theta = to_mv(&env.eval(e)?)?;
            let g = decompose(&theta)?;
            Ok(Outcome::residual(assemble(&g)?.sub(&theta), Some(g.to_string())))
        }
        Command::Dirac(e) => {
            let g = to_dirac(&env.eval(e)?)?;
            Ok(Outcome::residual(g.self_bracket()?, None))
        }
        Command::StructureEqs(e) => {
            let r = structure_equations(&to_dirac(&env.eval(e)?)?)?;
            let [first, rest @ ..] = r.as_array();
            let total = rest.iter().try_fold(first.clone(), |acc, x| acc.try_add(x))?;
            Ok(Outcome::residual(total, None))
        }
        Command::Jet(e, n) => {
            let g = to_dirac(&env.eval(e)?)?;
            let n = *n as usize;
            let j = jet_n(&g.to_mixed(), n)?;
            let residual = jet_n(&ltimes_bracket(&j, &j)?, n)?;
            Ok(Outcome::residual(residual, Some(j.to_string())))
        }
        Command::Moser(e) => {
            let path = moser_path(&to_dirac(&env.eval(e)?)?)?;
            Ok(Outcome::residual(
                path.gamma_t.self_bracket()?,
                Some(path.gamma_t.to_string()),
            ))
        }
        Command::ChainMap(e, u) => {
            let theta = to_mv(&env.eval(e)?)?;
            let u = to_mv(&env.eval(u)?)?;
            Ok(Outcome::residual(chain_map_residual(&theta, &u)?, None))
        }
        Command::Monodromy(m, point) => {
            let model = to_periods(&env.eval(m)?)?;
            let at = point.as_ref().map(|p| env.point(p)).transpose()?;
            Ok(Outcome::value(format_generators(&monodromy(&model, at.as_deref())?)))
        }
        Command::RatioConstancy(m) => {
            let checks = ratio_constancy(&to_periods(&env.eval(m)?)?)?;
            let parts: Vec<String> = checks
                .iter()
                .map(|c| {
                    let pair = format!("g{}/g{}", c.pair.0 + 1, c.pair.1 + 1);
                    match &c.ratio {
                        None => format!("{pair} not proportional"),
                        Some(r) if c.constant => format!("{pair} = {r} constant"),
                        Some(r) => format!("{pair} = {r} non-constant"),
                    }
                })
                .collect();
            Ok(Outcome::value(parts.join("; ")))
        }
        Command::Affine(m) => Ok(Outcome::value(affine_in_params(&to_periods(&env.eval(m)?)?))),
        Command::IntIdentity(f, basis) => {
            let f = to_scalar(&env.eval(f)?)?;
            let basis = basis
                .iter()
                .map(|g| to_scalar(&env.eval(g)?))
                .collect::<Result<Vec<_>>>()?;
            Ok(Outcome::value(match integer_affine_identity(&f, &basis)? {
                None => "infeasible".to_string(),
                Some(m) => {
                    let m: Vec<String> = m.iter().map(ToString::to_string).collect();
                    format!("m = ({})", m.join(", "))
                }
            }))
        }
        Command::Emit(e) => Ok(Outcome::value(env.eval(e)?)),
    }
}

fn error_string(e: &Error) -> String {
    format!("error: {}: {e}", e.kind())
}

/// Runs every command in order; a failing command is recorded and the rest still run.
pub fn execute_with(p: &Program, opts: ExecOptions) -> Report {
    let ctx = match program_context(p) {
        Ok(ctx) => ctx,
        Err(e) => {
            let commands = p
                .commands()
                .map(|c| Record::failed(c.name(), error_string(&e), 0.0))
                .collect();
            return Report::new(commands);
        }
    };
    let mut env = Env {
        ctx,
        vars: HashMap::new(),
    };
    let mut records = Vec::new();
    for item in &p.items {
        match item {
            Item::Let(name, e) => {
                let v = env.eval(e);
                env.vars.insert(name.clone(), v);
            }
            Item::Command(cmd) => {
                let start = Instant::now();
                let out = run_command(&env, cmd);
                let ms = if opts.timing {
                    start.elapsed().as_secs_f64() * 1000.0
                } else {
                    0.0
                };
                records.push(match out {
                    Ok(o) => Record::new(cmd.name(), o.residual, o.value, ms),
                    Err(e) => Record::failed(cmd.name(), error_string(&e), ms),
                });
            }
        }
    }
    Report::new(records)
}

pub fn execute(p: &Program) -> Report {
    execute_with(p, ExecOptions::default())
}
