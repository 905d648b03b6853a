use num_bigint::BigInt;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartDecl {
    pub base: Vec<String>,
    pub fiber: Vec<String>,
    pub params: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    /// `&`: form tensor vertical multivector.
    Tensor,
    /// `^`: integer power of a scalar, otherwise wedge.
    Caret,
}

impl BinOp {
    pub fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Tensor => 3,
            BinOp::Caret => 5,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Tensor => '&',
            BinOp::Caret => '^',
        }
    }
}

pub(crate) const NEG_PRECEDENCE: u8 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Var(String),
    Vector(String),
    Form(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
    List(Vec<Expr>),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Bin(op, ..) => op.precedence(),
            Expr::Neg(_) => NEG_PRECEDENCE,
            _ => u8::MAX,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Jacobi(Expr),
    Decompose(Expr),
    Dirac(Expr),
    StructureEqs(Expr),
    Jet(Expr, u32),
    Moser(Expr),
    ChainMap(Expr, Expr),
    Monodromy(Expr, Option<Expr>),
    RatioConstancy(Expr),
    Affine(Expr),
    IntIdentity(Expr, Vec<Expr>),
    Emit(Expr),
}

impl Command {
    /// Name used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Command::Jacobi(_) => "check jacobi",
            Command::Decompose(_) => "decompose",
            Command::Dirac(_) => "check dirac",
            Command::StructureEqs(_) => "structure_eqs",
            Command::Jet(..) => "jet",
            Command::Moser(_) => "moser",
            Command::ChainMap(..) => "chain_map",
            Command::Monodromy(..) => "monodromy",
            Command::RatioConstancy(_) => "ratio_constancy",
            Command::Affine(_) => "affine",
            Command::IntIdentity(..) => "int_identity",
            Command::Emit(_) => "emit",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Let(String, Expr),
    Command(Command),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub chart: ChartDecl,
    pub items: Vec<Item>,
}

impl Program {
    pub fn bindings(&self) -> impl Iterator<Item = (&str, &Expr)> {
        self.items.iter().filter_map(|i| match i {
            Item::Let(n, e) => Some((n.as_str(), e)),
            Item::Command(_) => None,
        })
    }

    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.items.iter().filter_map(|i| match i {
            Item::Command(c) => Some(c),
            Item::Let(..) => None,
        })
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Expr]) -> fmt::Result {
    for (i, e) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{e}")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Var(v) => f.write_str(v),
            Expr::Vector(v) => write!(f, "d/d{v}"),
            Expr::Form(v) => write!(f, "dx[{v}]"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_child(f, e, e.precedence() < NEG_PRECEDENCE)
            }
            Expr::Bin(op, a, b) => {
                let p = op.precedence();
                write_child(f, a, a.precedence() < p)?;
                match op {
                    BinOp::Add | BinOp::Sub => write!(f, " {} ", op.symbol())?,
                    _ => write!(f, "{}", op.symbol())?,
                }
                write_child(f, b, b.precedence() <= p)
            }
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                write_list(f, args)?;
                f.write_str(")")
            }
            Expr::List(items) => {
                f.write_str("[")?;
                write_list(f, items)?;
                f.write_str("]")
            }
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Jacobi(e) => write!(f, "check jacobi({e});"),
            Command::Decompose(e) => write!(f, "decompose({e});"),
            Command::Dirac(e) => write!(f, "check dirac({e});"),
            Command::StructureEqs(e) => write!(f, "structure_eqs({e});"),
            Command::Jet(e, n) => write!(f, "jet({e}, {n});"),
            Command::Moser(e) => write!(f, "moser({e});"),
            Command::ChainMap(e, u) => write!(f, "chain_map({e}, {u});"),
            Command::Monodromy(m, None) => write!(f, "monodromy({m});"),
            Command::Monodromy(m, Some(p)) => write!(f, "monodromy({m}, {p});"),
            Command::RatioConstancy(m) => write!(f, "ratio_constancy({m});"),
            Command::Affine(m) => write!(f, "affine({m});"),
            Command::IntIdentity(t, basis) => {
                write!(f, "int_identity({t}; ")?;
                write_list(f, basis)?;
                f.write_str(");")
            }
            Command::Emit(e) => write!(f, "emit({e});"),
        }
    }
}

/// Canonical source text; parsing it gives back the same program.
impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.chart;
        write!(
            f,
            "chart {{ base:[{}]; fiber:[{}];",
            c.base.join(", "),
            c.fiber.join(", ")
        )?;
        if !c.params.is_empty() {
            write!(f, " params:[{}];", c.params.join(", "))?;
        }
        f.write_str(" }\n")?;
        for item in &self.items {
            match item {
                Item::Let(n, e) => writeln!(f, "let {n} = {e};")?,
                Item::Command(cmd) => writeln!(f, "{cmd}")?,
            }
        }
        Ok(())
    }
}
