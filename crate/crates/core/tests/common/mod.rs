#![allow(dead_code)]

use std::collections::HashMap;
use std::fmt::Write;
use std::path::PathBuf;

use easytype::surface::{Expr, ExprKind, Pattern, PatternKind, Program, Span, TopDef};
use easytype::tycore::{DisplayTy, TyCon, TyId, TyStore};
use rand::rngs::StdRng;
use rand::Rng;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// `(name, source)` of corpus programs whose name starts with `prefix`.
pub fn corpus_programs(prefix: &str) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "src"))
        .filter_map(|p| {
            let name = p.file_stem()?.to_string_lossy().into_owned();
            name.starts_with(prefix)
                .then(|| (name, std::fs::read_to_string(&p).unwrap()))
        })
        .collect();
    out.sort();
    out
}

/// Runs `f` on a thread with a large stack, for deeply nested programs.
pub fn with_big_stack<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> T {
    std::thread::Builder::new()
        .stack_size(256 << 20)
        .spawn(f)
        .unwrap()
        .join()
        .unwrap()
}

// ---------------------------------------------------------------------------
// Oracle unifier: plain terms and an explicit substitution.

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OTy {
    Var(u32),
    Con(&'static str, Vec<OTy>),
}

impl OTy {
    pub fn arrow(a: OTy, b: OTy) -> OTy {
        OTy::Con("->", vec![a, b])
    }

    pub fn size(&self) -> usize {
        match self {
            OTy::Var(_) => 1,
            OTy::Con(_, args) => 1 + args.iter().map(OTy::size).sum::<usize>(),
        }
    }
}

pub type Subst = HashMap<u32, OTy>;

pub fn apply(s: &Subst, t: &OTy) -> OTy {
    match t {
        OTy::Var(v) => match s.get(v) {
            Some(u) => apply(s, u),
            None => t.clone(),
        },
        OTy::Con(c, args) => OTy::Con(c, args.iter().map(|a| apply(s, a)).collect()),
    }
}

fn occurs_in(v: u32, t: &OTy) -> bool {
    match t {
        OTy::Var(w) => *w == v,
        OTy::Con(_, args) => args.iter().any(|a| occurs_in(v, a)),
    }
}

/// Robinson unification over fully applied terms.
pub fn oracle_unify(a: &OTy, b: &OTy, s: &mut Subst) -> bool {
    let (a, b) = (apply(s, a), apply(s, b));
    match (&a, &b) {
        (OTy::Var(x), OTy::Var(y)) if x == y => true,
        (OTy::Var(x), t) | (t, OTy::Var(x)) => {
            if occurs_in(*x, t) {
                return false;
            }
            s.insert(*x, t.clone());
            true
        }
        (OTy::Con(c1, a1), OTy::Con(c2, a2)) => {
            c1 == c2
                && a1.len() == a2.len()
                && a1.iter().zip(a2).all(|(x, y)| oracle_unify(x, y, s))
        }
    }
}

/// Canonical text with variables renamed by first occurrence.
pub fn canonical(t: &OTy) -> String {
    fn go(t: &OTy, names: &mut HashMap<u32, usize>, out: &mut String) {
        match t {
            OTy::Var(v) => {
                let n = names.len();
                let i = *names.entry(*v).or_insert(n);
                let _ = write!(out, "v{i}");
            }
            OTy::Con(c, args) => {
                out.push('(');
                out.push_str(c);
                for a in args {
                    out.push(' ');
                    go(a, names, out);
                }
                out.push(')');
            }
        }
    }
    let mut out = String::new();
    go(t, &mut HashMap::new(), &mut out);
    out
}

/// The same canonical text for a snapshot taken from the store.
pub fn canonical_display(t: &DisplayTy) -> String {
    canonical(&from_display(t))
}

pub fn from_display(t: &DisplayTy) -> OTy {
    match t {
        DisplayTy::Var(i) => OTy::Var(*i),
        DisplayTy::Arrow(a, b) => OTy::arrow(from_display(a), from_display(b)),
        DisplayTy::Con(c, arg) => OTy::Con(c.name(), arg.iter().map(|a| from_display(a)).collect()),
        DisplayTy::Tuple(ts) => {
            OTy::Con(tuple_name(ts.len()), ts.iter().map(from_display).collect())
        }
    }
}

fn tuple_name(n: usize) -> &'static str {
    match n {
        2 => "*2",
        3 => "*3",
        _ => "*n",
    }
}

/// Builds `t` in `store`; `vars` maps oracle variables to store variables.
pub fn to_store(store: &mut TyStore, t: &OTy, vars: &mut HashMap<u32, TyId>) -> TyId {
    match t {
        OTy::Var(v) => *vars.entry(*v).or_insert_with(|| store.fresh_var(1)),
        OTy::Con("->", args) => {
            let a = to_store(store, &args[0], vars);
            let b = to_store(store, &args[1], vars);
            store.arrow(a, b)
        }
        OTy::Con(c, args) if c.starts_with('*') => {
            let ts = args.iter().map(|a| to_store(store, a, vars)).collect();
            store.tuple(ts)
        }
        OTy::Con(c, args) => {
            let con = TyCon::from_name(c).expect("known constructor");
            let arg = args.first().map(|a| to_store(store, a, vars));
            store.con(con, arg)
        }
    }
}

/// Random type with at most `budget` nodes over variables `0..nvars`.
pub fn random_type(rng: &mut StdRng, budget: usize, nvars: u32) -> OTy {
    if budget <= 1 {
        return random_leaf(rng, nvars);
    }
    match rng.gen_range(0..6) {
        0 | 1 => random_leaf(rng, nvars),
        2 => {
            let left = rng.gen_range(1..budget);
            let a = random_type(rng, left, nvars);
            let b = random_type(rng, budget - a.size().min(budget - 1) - 1, nvars);
            OTy::arrow(a, b)
        }
        3 => {
            let con = if rng.gen_bool(0.5) { "list" } else { "ref" };
            OTy::Con(con, vec![random_type(rng, budget - 1, nvars)])
        }
        _ => {
            if budget < 3 {
                return random_leaf(rng, nvars);
            }
            let a = random_type(rng, (budget - 1) / 2, nvars);
            let b = random_type(rng, budget - 1 - a.size(), nvars);
            OTy::Con("*2", vec![a, b])
        }
    }
}

fn random_leaf(rng: &mut StdRng, nvars: u32) -> OTy {
    match rng.gen_range(0..5) {
        0 => OTy::Con("int", vec![]),
        1 => OTy::Con("bool", vec![]),
        2 => OTy::Con("unit", vec![]),
        _ => OTy::Var(rng.gen_range(0..nvars)),
    }
}

// ---------------------------------------------------------------------------
// Random terms.

pub fn dummy() -> Span {
    Span::dummy("gen.src")
}

fn e(kind: ExprKind) -> Expr {
    Expr::new(kind, dummy())
}

fn var(x: &str) -> Expr {
    e(ExprKind::Var(x.to_string()))
}

fn pvar(x: &str) -> Pattern {
    Pattern::new(PatternKind::Var(x.to_string()), dummy())
}

const PRIMS: &[&str] = &[
    "+",
    "-",
    "=",
    "<",
    "fst",
    "snd",
    "::",
    "not",
    "ref",
    "!",
    ":=",
    "List.map",
    "List.length",
    "print_int",
    "read_int",
    "ignore",
    "+.",
    "List.fold_left",
];

pub struct TermGen<'a> {
    pub rng: &'a mut StdRng,
    next: u32,
}

impl<'a> TermGen<'a> {
    pub fn new(rng: &'a mut StdRng) -> Self {
        TermGen { rng, next: 0 }
    }

    fn fresh_name(&mut self) -> String {
        self.next += 1;
        format!("x{}", self.next)
    }

    /// Random term of at most `size` nodes with variables from `scope`.
    pub fn term(&mut self, size: usize, scope: &mut Vec<String>) -> Expr {
        if size <= 1 {
            return self.leaf(scope);
        }
        match self.rng.gen_range(0..11) {
            0 => self.leaf(scope),
            1 | 2 => {
                let x = self.fresh_name();
                scope.push(x.clone());
                let body = self.term(size - 1, scope);
                scope.pop();
                e(ExprKind::Fun(vec![pvar(&x)], Box::new(body)))
            }
            3 | 4 => {
                let nargs = if size >= 4 && self.rng.gen_bool(0.4) {
                    2
                } else {
                    1
                };
                let budget = size - 1;
                let fsize = 1.max(budget / (nargs + 1));
                let f = if self.rng.gen_bool(0.6) {
                    var(PRIMS[self.rng.gen_range(0..PRIMS.len())])
                } else {
                    self.term(fsize, scope)
                };
                let each = 1.max((budget - fsize.min(budget)) / nargs);
                let args: Vec<Expr> = (0..nargs).map(|_| self.term(each, scope)).collect();
                // Keep the parser's invariant: the head is never an application.
                match f.kind {
                    ExprKind::App(g, mut first) => {
                        first.extend(args);
                        e(ExprKind::App(g, first))
                    }
                    _ => e(ExprKind::App(Box::new(f), args)),
                }
            }
            5 => {
                let x = self.fresh_name();
                let is_rec = self.rng.gen_bool(0.2);
                let half = 1.max((size - 1) / 2);
                if is_rec {
                    scope.push(x.clone());
                }
                let bound = self.term(half, scope);
                if !is_rec {
                    scope.push(x.clone());
                }
                let body = self.term(1.max(size - 1 - half), scope);
                scope.pop();
                e(ExprKind::Let {
                    is_rec,
                    name: x,
                    bound: Box::new(bound),
                    body: Box::new(body),
                })
            }
            6 => {
                let third = 1.max((size - 1) / 3);
                let c = self.term(third, scope);
                let t = self.term(third, scope);
                let f = if self.rng.gen_bool(0.8) {
                    Some(Box::new(self.term(third, scope)))
                } else {
                    None
                };
                e(ExprKind::If(Box::new(c), Box::new(t), f))
            }
            7 => {
                let half = 1.max((size - 1) / 2);
                let items = vec![self.term(half, scope), self.term(half, scope)];
                if self.rng.gen_bool(0.5) {
                    e(ExprKind::Tuple(items))
                } else {
                    e(ExprKind::ListLit(items))
                }
            }
            8 => {
                let half = 1.max((size - 1) / 2);
                let a = self.term(half, scope);
                let b = self.term(half, scope);
                e(ExprKind::Seq(Box::new(a), Box::new(b)))
            }
            _ => {
                let third = 1.max((size - 1) / 3);
                let scrut = self.term(third, scope);
                let nil_arm = self.term(third, scope);
                let (h, t) = (self.fresh_name(), self.fresh_name());
                scope.push(h.clone());
                scope.push(t.clone());
                let cons_arm = self.term(third, scope);
                scope.pop();
                scope.pop();
                let cons = Pattern::new(
                    PatternKind::Cons(Box::new(pvar(&h)), Box::new(pvar(&t))),
                    dummy(),
                );
                e(ExprKind::Match(
                    Box::new(scrut),
                    vec![
                        (Pattern::new(PatternKind::Nil, dummy()), nil_arm),
                        (cons, cons_arm),
                    ],
                ))
            }
        }
    }

    fn leaf(&mut self, scope: &[String]) -> Expr {
        if !scope.is_empty() && self.rng.gen_bool(0.5) {
            return var(&scope[self.rng.gen_range(0..scope.len())]);
        }
        match self.rng.gen_range(0..7) {
            0 => e(ExprKind::ConstInt(self.rng.gen_range(0..10))),
            1 => e(ExprKind::ConstBool(self.rng.gen_bool(0.5))),
            2 => e(ExprKind::ConstFloat(1.5)),
            3 => e(ExprKind::ConstUnit),
            4 => e(ExprKind::ListLit(vec![])),
            _ => var(PRIMS[self.rng.gen_range(0..PRIMS.len())]),
        }
    }
}

pub fn expr_size(x: &Expr) -> usize {
    1 + match &x.kind {
        ExprKind::Fun(_, b) => expr_size(b),
        ExprKind::App(f, args) => expr_size(f) + args.iter().map(expr_size).sum::<usize>(),
        ExprKind::Let { bound, body, .. } => expr_size(bound) + expr_size(body),
        ExprKind::If(c, t, f) => {
            expr_size(c) + expr_size(t) + f.as_ref().map_or(0, |f| expr_size(f))
        }
        ExprKind::Match(s, arms) => {
            expr_size(s) + arms.iter().map(|(_, b)| expr_size(b)).sum::<usize>()
        }
        ExprKind::While(a, b) | ExprKind::Seq(a, b) => expr_size(a) + expr_size(b),
        ExprKind::Tuple(es) | ExprKind::ListLit(es) => es.iter().map(expr_size).sum(),
        ExprKind::Annot(x, _) => expr_size(x),
        _ => 0,
    }
}

pub fn single_def_program(body: Expr) -> Program {
    Program {
        file: "gen.src".into(),
        defs: vec![TopDef {
            is_rec: false,
            name: "t".into(),
            body,
            span: dummy(),
        }],
    }
}

// ---------------------------------------------------------------------------
// Large programs.

/// One definition spanning at least `lines` lines. With `error_at`, the
/// binding on that line adds a float to an int.
pub fn long_definition(lines: usize, error_at: Option<usize>) -> String {
    let mut src = String::from("let big x0 =\n");
    let mut n = 1;
    while n < lines {
        let prev = n - 1;
        let line = if Some(n) == error_at {
            format!("  let x{n} = x{prev} +. 1.5 in\n")
        } else {
            match n % 7 {
                0 => format!("  let x{n} = x{prev} + {n} in\n"),
                1 => {
                    format!("  let x{n} = if x{prev} > {n} then x{prev} - 1 else x{prev} * 2 in\n")
                }
                2 => format!("  let x{n} = List.length [x{prev}; {n}; x{prev} + 1] + x{prev} in\n"),
                3 => format!("  let x{n} = (fun y -> y + x{prev}) {n} in\n"),
                4 => format!("  let x{n} = match [x{prev}] with [] -> 0 | h :: _ -> h + 1 in\n"),
                5 => format!("  let x{n} = fst (x{prev}, \"s{n}\") in\n"),
                _ => format!("  let x{n} = List.fold_left (fun a b -> a + b) x{prev} [1; 2] in\n"),
            }
        };
        src.push_str(&line);
        n += 1;
    }
    let _ = writeln!(src, "  x{}", n - 1);
    src
}
