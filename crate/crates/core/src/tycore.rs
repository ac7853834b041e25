//! Type terms, schemes, immutable display snapshots and the initial environment.
//!
//! Types live in a [`TyStore`], an arena of nodes owned by one checking
//! session. Unification variables are nodes that may carry a link to another
//! node; [`TyStore::repr`] follows links with path compression. Every variable
//! also carries a let-level used for generalization: a variable may be
//! quantified at a `let` iff its level exceeds the level of the enclosing
//! environment.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::surface::{self, TypeExpr};

/// Handle to a node in a [`TyStore`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TyId(u32);

impl TyId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TyCon {
    Int,
    Float,
    Bool,
    String,
    Unit,
    Char,
    List,
    Ref,
}

impl TyCon {
    pub fn name(self) -> &'static str {
        match self {
            TyCon::Int => "int",
            TyCon::Float => "float",
            TyCon::Bool => "bool",
            TyCon::String => "string",
            TyCon::Unit => "unit",
            TyCon::Char => "char",
            TyCon::List => "list",
            TyCon::Ref => "ref",
        }
    }

    pub fn from_name(name: &str) -> Option<TyCon> {
        Some(match name {
            "int" => TyCon::Int,
            "float" => TyCon::Float,
            "bool" => TyCon::Bool,
            "string" => TyCon::String,
            "unit" => TyCon::Unit,
            "char" => TyCon::Char,
            "list" => TyCon::List,
            "ref" => TyCon::Ref,
            _ => return None,
        })
    }

    pub fn arity(self) -> usize {
        match self {
            TyCon::List | TyCon::Ref => 1,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Var { level: u32, link: Option<TyId> },
    Arrow(TyId, TyId),
    Con(TyCon, Option<TyId>),
    Tuple(Vec<TyId>),
}

#[derive(Debug, Clone, Default)]
pub struct TyStore {
    nodes: Vec<Node>,
}

impl TyStore {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, node: Node) -> TyId {
        let id = TyId(u32::try_from(self.nodes.len()).expect("type store overflow"));
        self.nodes.push(node);
        id
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn fresh_var(&mut self, level: u32) -> TyId {
        self.push(Node::Var { level, link: None })
    }

    pub fn arrow(&mut self, param: TyId, result: TyId) -> TyId {
        self.push(Node::Arrow(param, result))
    }

    /// Builds `p1 -> p2 -> ... -> ret`.
    pub fn arrows(&mut self, params: &[TyId], ret: TyId) -> TyId {
        params.iter().rev().fold(ret, |acc, &p| self.arrow(p, acc))
    }

    pub fn con(&mut self, con: TyCon, arg: Option<TyId>) -> TyId {
        debug_assert_eq!(con.arity(), usize::from(arg.is_some()));
        self.push(Node::Con(con, arg))
    }

    pub fn base(&mut self, con: TyCon) -> TyId {
        self.con(con, None)
    }

    pub fn list(&mut self, elem: TyId) -> TyId {
        self.con(TyCon::List, Some(elem))
    }

    pub fn tuple(&mut self, elems: Vec<TyId>) -> TyId {
        debug_assert!(elems.len() >= 2);
        self.push(Node::Tuple(elems))
    }

    pub fn node(&self, t: TyId) -> &Node {
        &self.nodes[t.index()]
    }

    /// End of the link chain, compressing the path behind it.
    pub fn repr(&mut self, t: TyId) -> TyId {
        let root = self.resolve(t);
        let mut cur = t;
        while cur != root {
            let Node::Var {
                link: Some(next), ..
            } = self.nodes[cur.index()]
            else {
                break;
            };
            if let Node::Var { link, .. } = &mut self.nodes[cur.index()] {
                *link = Some(root);
            }
            cur = next;
        }
        root
    }

    /// End of the link chain, without mutating the store.
    pub fn resolve(&self, mut t: TyId) -> TyId {
        while let Node::Var {
            link: Some(next), ..
        } = self.nodes[t.index()]
        {
            t = next;
        }
        t
    }

    /// Level of an unlinked variable.
    pub fn level(&self, var: TyId) -> Option<u32> {
        match self.nodes[var.index()] {
            Node::Var { level, link: None } => Some(level),
            _ => None,
        }
    }

    pub(crate) fn set_level(&mut self, var: TyId, new_level: u32) {
        if let Node::Var { level, link: None } = &mut self.nodes[var.index()] {
            *level = new_level;
        }
    }

    /// Links an unlinked variable. Callers perform the occurs check.
    pub(crate) fn link(&mut self, var: TyId, target: TyId) {
        if let Node::Var { link, .. } = &mut self.nodes[var.index()] {
            debug_assert!(link.is_none());
            *link = Some(target);
        }
    }

    pub fn is_var(&self, t: TyId) -> bool {
        matches!(self.nodes[self.resolve(t).index()], Node::Var { .. })
    }

    /// Link state of every node, for checking read-only operations.
    pub fn link_state(&self) -> Vec<Option<TyId>> {
        self.nodes
            .iter()
            .map(|n| match n {
                Node::Var { link, .. } => *link,
                _ => None,
            })
            .collect()
    }

    /// Unlinked variables reachable from `t`, in first-occurrence order.
    pub fn free_vars(&self, t: TyId) -> Vec<TyId> {
        let mut out = Vec::new();
        self.collect_vars(t, &mut out);
        out
    }

    fn collect_vars(&self, t: TyId, out: &mut Vec<TyId>) {
        let t = self.resolve(t);
        match &self.nodes[t.index()] {
            Node::Var { .. } => {
                if !out.contains(&t) {
                    out.push(t);
                }
            }
            Node::Arrow(a, b) => {
                self.collect_vars(*a, out);
                self.collect_vars(*b, out);
            }
            Node::Con(_, arg) => {
                if let Some(a) = arg {
                    self.collect_vars(*a, out);
                }
            }
            Node::Tuple(ts) => ts.iter().for_each(|e| self.collect_vars(*e, out)),
        }
    }

    /// Lowers every variable in `t` to at most `level`; used when a binding
    /// is not generalized.
    pub(crate) fn clamp_levels(&mut self, t: TyId, level: u32) {
        for v in self.free_vars(t) {
            if self.level(v).is_some_and(|l| l > level) {
                self.set_level(v, level);
            }
        }
    }

    pub fn display(&self, t: TyId) -> DisplayTy {
        snapshot(self, t, &mut NamingContext::new())
    }
}

/// A type with explicitly quantified variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Scheme {
    pub quantified: Vec<TyId>,
    pub body: TyId,
}

impl Scheme {
    pub fn mono(body: TyId) -> Self {
        Scheme {
            quantified: Vec::new(),
            body,
        }
    }
}

/// Quantifies the variables of `t` whose level exceeds `env_level`.
pub fn generalize(store: &TyStore, env_level: u32, t: TyId) -> Scheme {
    let quantified = store
        .free_vars(t)
        .into_iter()
        .filter(|v| store.level(*v).is_some_and(|l| l > env_level))
        .collect();
    Scheme {
        quantified,
        body: t,
    }
}

/// Copies the scheme body, replacing quantified variables by fresh ones at `level`.
pub fn instantiate(store: &mut TyStore, scheme: &Scheme, level: u32) -> TyId {
    if scheme.quantified.is_empty() {
        return scheme.body;
    }
    let mut map: HashMap<TyId, TyId> = HashMap::new();
    for &q in &scheme.quantified {
        let fresh = store.fresh_var(level);
        map.insert(q, fresh);
    }
    copy_with(store, scheme.body, &map)
}

fn copy_with(store: &mut TyStore, t: TyId, map: &HashMap<TyId, TyId>) -> TyId {
    let t = store.repr(t);
    if let Some(&fresh) = map.get(&t) {
        return fresh;
    }
    match store.node(t).clone() {
        Node::Var { .. } => t,
        Node::Arrow(a, b) => {
            let (na, nb) = (copy_with(store, a, map), copy_with(store, b, map));
            if na == a && nb == b {
                t
            } else {
                store.arrow(na, nb)
            }
        }
        Node::Con(c, arg) => match arg {
            Some(a) => {
                let na = copy_with(store, a, map);
                if na == a {
                    t
                } else {
                    store.con(c, Some(na))
                }
            }
            None => t,
        },
        Node::Tuple(ts) => {
            let nts: Vec<TyId> = ts.iter().map(|e| copy_with(store, *e, map)).collect();
            if nts == ts {
                t
            } else {
                store.tuple(nts)
            }
        }
    }
}

/// Typing environment: a stack of bindings searched from the most recent.
#[derive(Debug, Clone, Default)]
pub struct TyEnv {
    bindings: Vec<(String, Scheme)>,
    shadows: Vec<String>,
    pub current_level: u32,
}

/// Prefix marking shadow entries; the lexer never produces it in identifiers.
pub const SHADOW_PREFIX: char = '#';

impl TyEnv {
    pub fn lookup(&self, name: &str) -> Option<&Scheme> {
        self.bindings
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
    }

    pub fn bind(&mut self, name: impl Into<String>, scheme: Scheme) {
        self.bindings.push((name.into(), scheme));
    }

    /// Number of bindings, for restoring scope with [`TyEnv::truncate`].
    pub fn depth(&self) -> usize {
        self.bindings.len()
    }

    pub fn truncate(&mut self, depth: usize) {
        self.bindings.truncate(depth);
    }

    pub fn bindings(&self) -> impl Iterator<Item = (&str, &Scheme)> {
        self.bindings.iter().map(|(n, s)| (n.as_str(), s))
    }

    pub fn push_shadow(&mut self, name: &str) {
        self.shadows.push(format!("{SHADOW_PREFIX}{name}"));
    }

    pub fn pop_shadow(&mut self) {
        self.shadows.pop();
    }

    pub fn has_shadow(&self, name: &str) -> bool {
        self.shadows
            .iter()
            .any(|s| s.strip_prefix(SHADOW_PREFIX) == Some(name))
    }

    pub fn enter_level(&mut self) {
        self.current_level += 1;
    }

    pub fn exit_level(&mut self) {
        self.current_level -= 1;
    }
}

/// Immutable copy of a type, with variables numbered per diagnostic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DisplayTy {
    Var(u32),
    Arrow(Box<DisplayTy>, Box<DisplayTy>),
    Con(TyCon, Option<Box<DisplayTy>>),
    Tuple(Vec<DisplayTy>),
}

/// Assigns display names to variables in first-occurrence order.
#[derive(Debug, Default)]
pub struct NamingContext {
    names: HashMap<TyId, u32>,
}

impl NamingContext {
    pub fn new() -> Self {
        Self::default()
    }

    fn name(&mut self, var: TyId) -> u32 {
        let next = self.names.len() as u32;
        *self.names.entry(var).or_insert(next)
    }
}

/// Deep copy of `t` through links. Variables shared across snapshots taken
/// with the same `naming` get the same display name.
pub fn snapshot(store: &TyStore, t: TyId, naming: &mut NamingContext) -> DisplayTy {
    let t = store.resolve(t);
    match store.node(t) {
        Node::Var { .. } => DisplayTy::Var(naming.name(t)),
        Node::Arrow(a, b) => DisplayTy::Arrow(
            Box::new(snapshot(store, *a, naming)),
            Box::new(snapshot(store, *b, naming)),
        ),
        Node::Con(c, arg) => DisplayTy::Con(*c, arg.map(|a| Box::new(snapshot(store, a, naming)))),
        Node::Tuple(ts) => {
            DisplayTy::Tuple(ts.iter().map(|e| snapshot(store, *e, naming)).collect())
        }
    }
}

pub fn var_name(index: u32) -> String {
    let letter = (b'a' + (index % 26) as u8) as char;
    match index / 26 {
        0 => format!("'{letter}"),
        n => format!("'{letter}{n}"),
    }
}

fn var_index(name: &str) -> Option<u32> {
    let mut chars = name.chars();
    let letter = chars.next().filter(char::is_ascii_lowercase)?;
    let rest: &str = chars.as_str();
    let n = if rest.is_empty() {
        0
    } else {
        rest.parse::<u32>().ok().filter(|n| *n > 0)?
    };
    Some(n * 26 + (letter as u32 - 'a' as u32))
}

impl DisplayTy {
    pub fn int() -> Self {
        DisplayTy::Con(TyCon::Int, None)
    }

    pub fn con(c: TyCon) -> Self {
        DisplayTy::Con(c, None)
    }

    pub fn list(elem: DisplayTy) -> Self {
        DisplayTy::Con(TyCon::List, Some(Box::new(elem)))
    }

    pub fn arrow(a: DisplayTy, b: DisplayTy) -> Self {
        DisplayTy::Arrow(Box::new(a), Box::new(b))
    }

    /// `unit -> t` gives `Some(t)`.
    pub fn unit_arrow_result(&self) -> Option<&DisplayTy> {
        match self {
            DisplayTy::Arrow(a, b) if **a == DisplayTy::con(TyCon::Unit) => Some(b),
            _ => None,
        }
    }

    /// `t ref` gives `Some(t)`.
    pub fn ref_payload(&self) -> Option<&DisplayTy> {
        match self {
            DisplayTy::Con(TyCon::Ref, Some(t)) => Some(t),
            _ => None,
        }
    }

    /// Parses the rendered form back; variable names map to their indices.
    pub fn parse(text: &str) -> Option<DisplayTy> {
        let tokens = display_tokens(text)?;
        let mut pos = 0;
        let ty = parse_arrow(&tokens, &mut pos)?;
        (pos == tokens.len()).then_some(ty)
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        let prec = match self {
            DisplayTy::Arrow(..) => 0,
            DisplayTy::Tuple(_) => 1,
            _ => 2,
        };
        if prec < ctx {
            f.write_str("(")?;
        }
        match self {
            DisplayTy::Var(i) => f.write_str(&var_name(*i))?,
            DisplayTy::Arrow(a, b) => {
                a.write(f, 1)?;
                f.write_str(" -> ")?;
                b.write(f, 0)?;
            }
            DisplayTy::Con(c, arg) => {
                if let Some(a) = arg {
                    a.write(f, 2)?;
                    f.write_str(" ")?;
                }
                f.write_str(c.name())?;
            }
            DisplayTy::Tuple(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    t.write(f, 2)?;
                }
            }
        }
        if prec < ctx {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for DisplayTy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

impl Serialize for DisplayTy {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DisplayTy {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        DisplayTy::parse(&text)
            .ok_or_else(|| serde::de::Error::custom(format!("malformed type `{text}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum DTok {
    Var(u32),
    Name(String),
    Arrow,
    Star,
    LParen,
    RParen,
}

fn display_tokens(text: &str) -> Option<Vec<DTok>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        match c {
            ' ' => {}
            '(' => out.push(DTok::LParen),
            ')' => out.push(DTok::RParen),
            '*' => out.push(DTok::Star),
            '-' => {
                chars.next().filter(|(_, c)| *c == '>')?;
                out.push(DTok::Arrow);
            }
            '\'' | 'a'..='z' => {
                let start = if c == '\'' { i + 1 } else { i };
                let mut end = i + 1;
                while let Some(&(j, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        end = j + 1;
                        chars.next();
                    } else {
                        break;
                    }
                }
                let word = &text[start..end];
                out.push(if c == '\'' {
                    DTok::Var(var_index(word)?)
                } else {
                    DTok::Name(word.to_string())
                });
            }
            _ => return None,
        }
    }
    Some(out)
}

fn parse_arrow(toks: &[DTok], pos: &mut usize) -> Option<DisplayTy> {
    let lhs = parse_tuple(toks, pos)?;
    if toks.get(*pos) == Some(&DTok::Arrow) {
        *pos += 1;
        let rhs = parse_arrow(toks, pos)?;
        return Some(DisplayTy::arrow(lhs, rhs));
    }
    Some(lhs)
}

fn parse_tuple(toks: &[DTok], pos: &mut usize) -> Option<DisplayTy> {
    let first = parse_app(toks, pos)?;
    if toks.get(*pos) != Some(&DTok::Star) {
        return Some(first);
    }
    let mut elems = vec![first];
    while toks.get(*pos) == Some(&DTok::Star) {
        *pos += 1;
        elems.push(parse_app(toks, pos)?);
    }
    Some(DisplayTy::Tuple(elems))
}

fn parse_app(toks: &[DTok], pos: &mut usize) -> Option<DisplayTy> {
    let mut ty = match toks.get(*pos)? {
        DTok::Var(i) => DisplayTy::Var(*i),
        DTok::Name(n) => {
            let c = TyCon::from_name(n).filter(|c| c.arity() == 0)?;
            DisplayTy::Con(c, None)
        }
        DTok::LParen => {
            *pos += 1;
            let inner = parse_arrow(toks, pos)?;
            if toks.get(*pos) != Some(&DTok::RParen) {
                return None;
            }
            inner
        }
        _ => return None,
    };
    *pos += 1;
    while let Some(DTok::Name(n)) = toks.get(*pos) {
        let c = TyCon::from_name(n).filter(|c| c.arity() == 1)?;
        ty = DisplayTy::Con(c, Some(Box::new(ty)));
        *pos += 1;
    }
    Some(ty)
}

/// A scheme detached from any store, with canonical variable numbering.
/// Two schemes are alpha-equivalent iff their `DisplayScheme`s are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DisplayScheme {
    pub quantified: Vec<u32>,
    pub body: DisplayTy,
}

impl fmt::Display for DisplayScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.body.fmt(f)
    }
}

pub fn export_scheme(store: &TyStore, scheme: &Scheme) -> DisplayScheme {
    let mut naming = NamingContext::new();
    let body = snapshot(store, scheme.body, &mut naming);
    let mut quantified: Vec<u32> = scheme
        .quantified
        .iter()
        .filter_map(|q| naming.names.get(&store.resolve(*q)).copied())
        .collect();
    quantified.sort_unstable();
    DisplayScheme { quantified, body }
}

/// Rebuilds a scheme in another store. Unquantified variables become fresh
/// level-0 variables shared across the whole body.
pub fn import_scheme(store: &mut TyStore, scheme: &DisplayScheme) -> Scheme {
    let mut vars: HashMap<u32, TyId> = HashMap::new();
    let mut quantified = Vec::new();
    for &q in &scheme.quantified {
        let v = store.fresh_var(1);
        vars.insert(q, v);
        quantified.push(v);
    }
    let body = build_display(store, &scheme.body, &mut vars);
    Scheme { quantified, body }
}

/// Builds store nodes for a display type; `vars` maps display indices to variables.
pub fn build_display(store: &mut TyStore, t: &DisplayTy, vars: &mut HashMap<u32, TyId>) -> TyId {
    match t {
        DisplayTy::Var(i) => *vars.entry(*i).or_insert_with(|| store.fresh_var(0)),
        DisplayTy::Arrow(a, b) => {
            let a = build_display(store, a, vars);
            let b = build_display(store, b, vars);
            store.arrow(a, b)
        }
        DisplayTy::Con(c, arg) => {
            let arg = arg.as_ref().map(|a| build_display(store, a, vars));
            store.con(*c, arg)
        }
        DisplayTy::Tuple(ts) => {
            let ts = ts.iter().map(|e| build_display(store, e, vars)).collect();
            store.tuple(ts)
        }
    }
}

/// Converts a type annotation; named variables are looked up in (and added to) `vars`.
pub fn type_of_annotation(
    store: &mut TyStore,
    t: &TypeExpr,
    level: u32,
    vars: &mut HashMap<String, TyId>,
) -> TyId {
    match t {
        TypeExpr::Var(v) => *vars
            .entry(v.clone())
            .or_insert_with(|| store.fresh_var(level)),
        TypeExpr::Con(name, args) => {
            // The parser only accepts known constructors with correct arity.
            let con = TyCon::from_name(name).unwrap_or(TyCon::Unit);
            let arg = args
                .first()
                .map(|a| type_of_annotation(store, a, level, vars));
            store.con(con, arg)
        }
        TypeExpr::Arrow(a, b) => {
            let a = type_of_annotation(store, a, level, vars);
            let b = type_of_annotation(store, b, level, vars);
            store.arrow(a, b)
        }
        TypeExpr::Tuple(ts) => {
            let ts = ts
                .iter()
                .map(|e| type_of_annotation(store, e, level, vars))
                .collect();
            store.tuple(ts)
        }
    }
}

const PRIMITIVES: &[(&str, &str)] = &[
    ("+", "int -> int -> int"),
    ("-", "int -> int -> int"),
    ("*", "int -> int -> int"),
    ("/", "int -> int -> int"),
    ("mod", "int -> int -> int"),
    ("~-", "int -> int"),
    ("+.", "float -> float -> float"),
    ("-.", "float -> float -> float"),
    ("*.", "float -> float -> float"),
    ("/.", "float -> float -> float"),
    ("~-.", "float -> float"),
    ("=", "'a -> 'a -> bool"),
    ("<>", "'a -> 'a -> bool"),
    ("==", "'a -> 'a -> bool"),
    ("!=", "'a -> 'a -> bool"),
    ("<", "'a -> 'a -> bool"),
    (">", "'a -> 'a -> bool"),
    ("<=", "'a -> 'a -> bool"),
    (">=", "'a -> 'a -> bool"),
    ("&&", "bool -> bool -> bool"),
    ("||", "bool -> bool -> bool"),
    ("not", "bool -> bool"),
    ("^", "string -> string -> string"),
    ("@", "'a list -> 'a list -> 'a list"),
    ("::", "'a -> 'a list -> 'a list"),
    ("fst", "'a * 'b -> 'a"),
    ("snd", "'a * 'b -> 'b"),
    ("ref", "'a -> 'a ref"),
    ("!", "'a ref -> 'a"),
    (":=", "'a ref -> 'a -> unit"),
    ("incr", "int ref -> unit"),
    ("decr", "int ref -> unit"),
    ("ignore", "'a -> unit"),
    ("float_of_int", "int -> float"),
    ("int_of_float", "float -> int"),
    ("string_of_int", "int -> string"),
    ("string_of_float", "float -> string"),
    ("read_int", "unit -> int"),
    ("read_line", "unit -> string"),
    ("print_int", "int -> unit"),
    ("print_float", "float -> unit"),
    ("print_string", "string -> unit"),
    ("print_endline", "string -> unit"),
    ("print_newline", "unit -> unit"),
    ("failwith", "string -> 'a"),
    ("List.map", "('a -> 'b) -> 'a list -> 'b list"),
    ("List.iter", "('a -> unit) -> 'a list -> unit"),
    ("List.fold_left", "('a -> 'b -> 'a) -> 'a -> 'b list -> 'a"),
    ("List.fold_right", "('a -> 'b -> 'b) -> 'a list -> 'b -> 'b"),
    ("List.length", "'a list -> int"),
    ("List.rev", "'a list -> 'a list"),
    ("List.hd", "'a list -> 'a"),
    ("List.tl", "'a list -> 'a list"),
    ("List.filter", "('a -> bool) -> 'a list -> 'a list"),
    ("List.mem", "'a -> 'a list -> bool"),
    ("String.length", "string -> int"),
    ("String.index", "string -> char -> int"),
    ("String.get", "string -> int -> char"),
];

fn primitive_types() -> &'static [(String, TypeExpr)] {
    static TYPES: OnceLock<Vec<(String, TypeExpr)>> = OnceLock::new();
    TYPES.get_or_init(|| {
        PRIMITIVES
            .iter()
            .map(|(name, sig)| {
                let ty = surface::parse_type(sig).expect("primitive signature");
                (name.to_string(), ty)
            })
            .collect()
    })
}

/// Environment at level 0 binding the primitives and standard library names.
pub fn initial_env(store: &mut TyStore) -> TyEnv {
    let mut env = TyEnv::default();
    for (name, ty) in primitive_types() {
        let mut vars = HashMap::new();
        let body = type_of_annotation(store, ty, 1, &mut vars);
        env.bind(name.clone(), generalize(store, 0, body));
    }
    env
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_vars_are_distinct_and_leveled() {
        let mut s = TyStore::new();
        let a = s.fresh_var(0);
        let b = s.fresh_var(3);
        assert_ne!(a, b);
        assert_eq!(s.level(b), Some(3));
    }

    #[test]
    fn repr_compresses() {
        let mut s = TyStore::new();
        let v1 = s.fresh_var(0);
        let v2 = s.fresh_var(0);
        let int = s.base(TyCon::Int);
        s.link(v1, v2);
        s.link(v2, int);
        assert_eq!(s.repr(v1), int);
        assert_eq!(
            s.node(v1),
            &Node::Var {
                level: 0,
                link: Some(int)
            }
        );
        assert_eq!(s.repr(v2), int);
    }

    #[test]
    fn generalize_identity() {
        let mut s = TyStore::new();
        let a = s.fresh_var(1);
        let t = s.arrow(a, a);
        let sch = generalize(&s, 0, t);
        assert_eq!(sch.quantified, vec![a]);
        assert_eq!(export_scheme(&s, &sch).body.to_string(), "'a -> 'a");
    }

    #[test]
    fn env_captured_variable_is_not_quantified() {
        let mut s = TyStore::new();
        let a = s.fresh_var(0);
        let mut env = TyEnv::default();
        env.bind("x", Scheme::mono(a));
        let int = s.base(TyCon::Int);
        let t = s.arrow(a, int);
        assert!(generalize(&s, env.current_level, t).quantified.is_empty());
    }

    #[test]
    fn instantiations_are_independent() {
        let mut s = TyStore::new();
        let a = s.fresh_var(1);
        let t = s.arrow(a, a);
        let sch = generalize(&s, 0, t);
        let i1 = instantiate(&mut s, &sch, 0);
        let i2 = instantiate(&mut s, &sch, 0);
        let int = s.base(TyCon::Int);
        let Node::Arrow(p1, _) = *s.node(i1) else {
            panic!()
        };
        s.link(p1, int);
        assert_eq!(s.display(i1).to_string(), "int -> int");
        assert_eq!(s.display(i2).to_string(), "'a -> 'a");
        let mono = Scheme::mono(int);
        assert_eq!(instantiate(&mut s, &mono, 0), int);
    }

    #[test]
    fn fold_left_instantiates_one_fresh_var_per_quantifier() {
        let mut s = TyStore::new();
        let env = initial_env(&mut s);
        let sch = env.lookup("List.fold_left").unwrap().clone();
        let before = s.len();
        let t = instantiate(&mut s, &sch, 0);
        let fresh: Vec<_> = s
            .free_vars(t)
            .into_iter()
            .filter(|v| v.index() >= before)
            .collect();
        assert_eq!(sch.quantified.len(), 2);
        assert_eq!(fresh.len(), 2);
        assert!(fresh.iter().all(|v| !sch.quantified.contains(v)));
    }

    #[test]
    fn initial_env_lookups() {
        let mut s = TyStore::new();
        let env = initial_env(&mut s);
        let show = |n: &str| export_scheme(&s, env.lookup(n).unwrap()).to_string();
        assert_eq!(show("List.map"), "('a -> 'b) -> 'a list -> 'b list");
        assert_eq!(show("String.index"), "string -> char -> int");
        assert_eq!(show(":="), "'a ref -> 'a -> unit");
        assert!(env.lookup("undefined_name").is_none());
    }

    #[test]
    fn snapshot_is_frozen() {
        let mut s = TyStore::new();
        let v = s.fresh_var(0);
        let snap = s.display(v);
        let f = s.base(TyCon::Float);
        s.link(v, f);
        assert_eq!(snap.to_string(), "'a");
        assert_eq!(s.display(v).to_string(), "float");
    }

    #[test]
    fn shared_variable_names() {
        let mut s = TyStore::new();
        let a = s.fresh_var(0);
        let l = s.list(a);
        let t = s.arrow(a, l);
        assert_eq!(s.display(t).to_string(), "'a -> 'a list");
        let mut naming = NamingContext::new();
        let b = s.fresh_var(0);
        let x = snapshot(&s, b, &mut naming);
        let y = snapshot(&s, t, &mut naming);
        assert_eq!(
            (x.to_string(), y.to_string()),
            ("'a".into(), "'b -> 'b list".into())
        );
    }

    #[test]
    fn display_grammar() {
        for text in [
            "int",
            "'a -> 'b -> 'a",
            "('a -> 'b) -> 'a list -> 'b list",
            "(int -> int) * bool",
            "(int * bool) list",
            "int ref list",
            "(int -> int) ref",
            "'a * ('b * 'c) -> 'z1",
        ] {
            let t = DisplayTy::parse(text).unwrap();
            assert_eq!(t.to_string(), text);
        }
        assert_eq!(
            DisplayTy::parse("int list list").unwrap().to_string(),
            "int list list"
        );
        assert!(DisplayTy::parse("foo").is_none());
        assert!(DisplayTy::parse("int ->").is_none());
    }

    #[test]
    fn scheme_export_import_round_trip() {
        let mut s = TyStore::new();
        let env = initial_env(&mut s);
        let sch = export_scheme(&s, env.lookup("List.fold_left").unwrap());
        let mut other = TyStore::new();
        let imported = import_scheme(&mut other, &sch);
        assert_eq!(export_scheme(&other, &imported), sch);
    }

    #[test]
    fn shadow_entries() {
        let mut env = TyEnv::default();
        env.push_shadow("fact");
        assert!(env.has_shadow("fact"));
        assert!(env.lookup("#fact").is_none());
        env.pop_shadow();
        assert!(!env.has_shadow("fact"));
    }
}
