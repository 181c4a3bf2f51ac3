use relcoh::arith::{Polynomial, Rational};

/// Line and column, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// A parsed script. Positions are kept beside the statements so that
/// comparing two sessions ignores layout.
#[derive(Clone, Debug, Default)]
pub struct Session {
    pub statements: Vec<Statement>,
    pub positions: Vec<Pos>,
}

impl PartialEq for Session {
    fn eq(&self, other: &Self) -> bool {
        self.statements == other.statements
    }
}

/// Rows of polynomials; every row has the same length.
pub type Matrix = Vec<Vec<Polynomial>>;

#[derive(Clone, Debug, PartialEq)]
pub enum Statement {
    /// `ring A = QQ;` or `ring A = QQ[t];`
    BaseRing { name: String, param: Option<String> },
    /// `ring R = A[x,y];`
    PolyRing { name: String, base: String, vars: Vec<String> },
    /// `module M = coker [[...]] twists=...;`
    Module {
        name: String,
        rows: Matrix,
        twists: Option<Vec<i64>>,
    },
    Command(Command),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    LocalCoh {
        target: String,
        i: (usize, usize),
        window: Option<(i64, i64)>,
        oracle: bool,
    },
    Ext {
        target: String,
        j: usize,
        window: Option<(i64, i64)>,
    },
    Duality {
        target: String,
        window: Option<(i64, i64)>,
    },
    BaseChange {
        target: String,
        at: Vec<Rational>,
        i: Option<(usize, usize)>,
        window: Option<(i64, i64)>,
    },
    DualExact {
        targets: [String; 3],
        /// Images of generators as matrix columns; identity when absent.
        maps: Option<(Matrix, Matrix)>,
        window: Option<(i64, i64)>,
    },
    Witness {
        target: String,
        window: Option<(i64, i64)>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::LocalCoh { .. } => "localcoh",
            Command::Ext { .. } => "ext",
            Command::Duality { .. } => "duality",
            Command::BaseChange { .. } => "basechange",
            Command::DualExact { .. } => "dualexact",
            Command::Witness { .. } => "witness",
        }
    }

    pub fn targets(&self) -> Vec<&str> {
        match self {
            Command::LocalCoh { target, .. }
            | Command::Ext { target, .. }
            | Command::Duality { target, .. }
            | Command::BaseChange { target, .. }
            | Command::Witness { target, .. } => vec![target.as_str()],
            Command::DualExact { targets, .. } => targets.iter().map(String::as_str).collect(),
        }
    }
}
