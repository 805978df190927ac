//! Parser for the supported PDDL subset: STRIPS with `:typing` and
//! `:negative-preconditions`.
//!
//! The grammar is the usual s-expression form. Unsupported constructs
//! (conditional effects, quantifiers, numeric fluents, ...) are rejected
//! with a named diagnostic rather than silently ignored. All symbols are
//! lowercased so that serialization is canonical.

use super::ast::*;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {col}: expected {expected}, found {found}")]
    Syntax { line: usize, col: usize, expected: String, found: String },
    #[error("unsupported PDDL feature at line {line}, column {col}: {feature}")]
    Unsupported { line: usize, col: usize, feature: String },
    #[error("predicate {predicate} used with {got} arguments, declared with {want}")]
    Arity { predicate: String, want: usize, got: usize },
    #[error("type error: {0}")]
    Type(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("problem requires domain `{want}` but was parsed against `{got}`")]
    DomainMismatch { want: String, got: String },
    #[error("action {action}: add and delete effects overlap on {atom}")]
    EffectOverlap { action: String, atom: String },
}

const SUPPORTED_REQUIREMENTS: &[&str] = &[":strips", ":typing", ":negative-preconditions"];

// ---------------------------------------------------------------------------
// S-expression layer

#[derive(Debug, Clone, PartialEq)]
enum Sexp {
    Sym(String, usize, usize),
    List(Vec<Sexp>, usize, usize),
}

impl Sexp {
    fn pos(&self) -> (usize, usize) {
        match self {
            Sexp::Sym(_, l, c) | Sexp::List(_, l, c) => (*l, *c),
        }
    }

    fn describe(&self) -> String {
        match self {
            Sexp::Sym(s, ..) => format!("`{s}`"),
            Sexp::List(items, ..) => match items.first() {
                Some(Sexp::Sym(h, ..)) => format!("list `({h} ...)`"),
                _ => "list".to_string(),
            },
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0, line: 1, col: 1 }
    }

    fn bump(&mut self, ch: char) {
        self.pos += ch.len_utf8();
        if ch == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(ch) = self.src[self.pos..].chars().next() {
            if ch == ';' {
                while let Some(c) = self.src[self.pos..].chars().next() {
                    self.bump(c);
                    if c == '\n' {
                        break;
                    }
                }
            } else if ch.is_whitespace() {
                self.bump(ch);
            } else {
                break;
            }
        }
    }

    fn parse(&mut self) -> Result<Sexp, ParseError> {
        self.skip_trivia();
        let (line, col) = (self.line, self.col);
        match self.src[self.pos..].chars().next() {
            None => Err(ParseError::Syntax {
                line,
                col,
                expected: "expression".into(),
                found: "end of input".into(),
            }),
            Some('(') => {
                self.bump('(');
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.src[self.pos..].chars().next() {
                        None => {
                            return Err(ParseError::Syntax {
                                line: self.line,
                                col: self.col,
                                expected: "`)`".into(),
                                found: "end of input".into(),
                            })
                        }
                        Some(')') => {
                            self.bump(')');
                            return Ok(Sexp::List(items, line, col));
                        }
                        Some(_) => items.push(self.parse()?),
                    }
                }
            }
            Some(')') => Err(ParseError::Syntax {
                line,
                col,
                expected: "expression".into(),
                found: "`)`".into(),
            }),
            Some(_) => {
                let start = self.pos;
                while let Some(c) = self.src[self.pos..].chars().next() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    self.bump(c);
                }
                let sym = self.src[start..self.pos].to_lowercase();
                Ok(Sexp::Sym(sym, line, col))
            }
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_trivia();
        if self.pos < self.src.len() {
            let (line, col) = (self.line, self.col);
            Err(ParseError::Syntax {
                line,
                col,
                expected: "end of input".into(),
                found: format!("`{}`", &self.src[self.pos..].chars().next().unwrap()),
            })
        } else {
            Ok(())
        }
    }
}

fn parse_sexp(src: &str) -> Result<Sexp, ParseError> {
    let mut lexer = Lexer::new(src);
    let sexp = lexer.parse()?;
    lexer.finish()?;
    Ok(sexp)
}

fn expect_sym(sexp: &Sexp, expected: &str) -> Result<String, ParseError> {
    match sexp {
        Sexp::Sym(s, ..) => Ok(s.clone()),
        _ => {
            let (line, col) = sexp.pos();
            Err(ParseError::Syntax {
                line,
                col,
                expected: expected.into(),
                found: sexp.describe(),
            })
        }
    }
}

fn expect_list<'s>(sexp: &'s Sexp, expected: &str) -> Result<&'s [Sexp], ParseError> {
    match sexp {
        Sexp::List(items, ..) => Ok(items),
        _ => {
            let (line, col) = sexp.pos();
            Err(ParseError::Syntax {
                line,
                col,
                expected: expected.into(),
                found: sexp.describe(),
            })
        }
    }
}

/// Parses `name - type name2 name3 - type2 ...` sequences. Names without a
/// trailing type get `default_ty`.
fn parse_typed_list(items: &[Sexp], default_ty: &str) -> Result<Vec<(String, String)>, ParseError> {
    let mut out = Vec::new();
    let mut pending: Vec<String> = Vec::new();
    let mut i = 0;
    while i < items.len() {
        let sym = expect_sym(&items[i], "name or `-`")?;
        if sym == "-" {
            i += 1;
            let ty = match items.get(i) {
                Some(s) => expect_sym(s, "type name")?,
                None => {
                    let (line, col) = items[i - 1].pos();
                    return Err(ParseError::Syntax {
                        line,
                        col,
                        expected: "type name after `-`".into(),
                        found: "end of list".into(),
                    });
                }
            };
            for name in pending.drain(..) {
                out.push((name, ty.clone()));
            }
            i += 1;
        } else {
            pending.push(sym);
            i += 1;
        }
    }
    for name in pending {
        out.push((name, default_ty.to_string()));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Domain

/// Parse a PDDL domain from source text.
pub fn parse_domain(text: &str) -> Result<Domain, ParseError> {
    let root = parse_sexp(text)?;
    let items = expect_list(&root, "(define ...)")?;
    let mut iter = items.iter();
    match iter.next() {
        Some(s) if expect_sym(s, "define").ok().as_deref() == Some("define") => {}
        other => {
            let (line, col) = other.or(Some(&root)).unwrap().pos();
            return Err(ParseError::Syntax {
                line,
                col,
                expected: "`define`".into(),
                found: other.map(|s| s.describe()).unwrap_or_else(|| "nothing".into()),
            });
        }
    }

    let head = iter.next().ok_or(ParseError::Syntax {
        line: 1,
        col: 1,
        expected: "(domain NAME)".into(),
        found: "end of list".into(),
    })?;
    let head_items = expect_list(head, "(domain NAME)")?;
    if head_items.len() != 2 || expect_sym(&head_items[0], "domain")? != "domain" {
        let (line, col) = head.pos();
        return Err(ParseError::Syntax {
            line,
            col,
            expected: "(domain NAME)".into(),
            found: head.describe(),
        });
    }
    let name = expect_sym(&head_items[1], "domain name")?;

    let mut domain = Domain {
        name,
        requirements: Vec::new(),
        types: BTreeMap::new(),
        predicates: BTreeMap::new(),
        actions: BTreeMap::new(),
    };

    for section in iter {
        let sec_items = expect_list(section, "domain section")?;
        let (line, col) = section.pos();
        let tag = match sec_items.first() {
            Some(s) => expect_sym(s, "section tag")?,
            None => continue,
        };
        match tag.as_str() {
            ":requirements" => {
                for req in &sec_items[1..] {
                    let r = expect_sym(req, "requirement")?;
                    if !SUPPORTED_REQUIREMENTS.contains(&r.as_str()) {
                        let (line, col) = req.pos();
                        return Err(ParseError::Unsupported {
                            line,
                            col,
                            feature: format!("requirement {r}"),
                        });
                    }
                    domain.requirements.push(r);
                }
                domain.requirements.sort();
                domain.requirements.dedup();
            }
            ":types" => {
                for (child, parent) in parse_typed_list(&sec_items[1..], TYPE_OBJECT)? {
                    if domain.types.insert(child.clone(), parent).is_some() {
                        return Err(ParseError::Duplicate { kind: "type", name: child });
                    }
                }
            }
            ":predicates" => {
                for decl in &sec_items[1..] {
                    let decl_items = expect_list(decl, "predicate declaration")?;
                    let pname = expect_sym(
                        decl_items.first().ok_or_else(|| {
                            let (line, col) = decl.pos();
                            ParseError::Syntax {
                                line,
                                col,
                                expected: "predicate name".into(),
                                found: "empty list".into(),
                            }
                        })?,
                        "predicate name",
                    )?;
                    let params = parse_typed_list(&decl_items[1..], TYPE_OBJECT)?;
                    for (p, _) in &params {
                        if !p.starts_with('?') {
                            return Err(ParseError::Type(format!(
                                "predicate {pname}: parameter `{p}` must be a ?variable"
                            )));
                        }
                    }
                    let schema = PredicateSchema {
                        name: pname.clone(),
                        param_types: params.into_iter().map(|(_, t)| t).collect(),
                    };
                    if domain.predicates.insert(pname.clone(), schema).is_some() {
                        return Err(ParseError::Duplicate { kind: "predicate", name: pname });
                    }
                }
            }
            ":action" => {
                let action = parse_action(sec_items, &domain)?;
                let aname = action.name.clone();
                if domain.actions.insert(aname.clone(), action).is_some() {
                    return Err(ParseError::Duplicate { kind: "action", name: aname });
                }
            }
            ":functions" | ":constants" | ":derived" | ":durative-action" => {
                return Err(ParseError::Unsupported { line, col, feature: format!("section {tag}") })
            }
            other => {
                return Err(ParseError::Unsupported {
                    line,
                    col,
                    feature: format!("section {other}"),
                })
            }
        }
    }

    validate_domain_types(&domain)?;
    Ok(domain)
}

fn validate_domain_types(domain: &Domain) -> Result<(), ParseError> {
    for (child, parent) in &domain.types {
        if parent != TYPE_OBJECT && !domain.types.contains_key(parent) {
            return Err(ParseError::Type(format!(
                "type {child} declared with unknown parent {parent}"
            )));
        }
    }
    for schema in domain.predicates.values() {
        for ty in &schema.param_types {
            if ty != TYPE_OBJECT && !domain.types.contains_key(ty) {
                return Err(ParseError::Type(format!(
                    "predicate {} uses undeclared type {ty}",
                    schema.name
                )));
            }
        }
    }
    Ok(())
}

fn parse_action(items: &[Sexp], domain: &Domain) -> Result<ActionSchema, ParseError> {
    let name = expect_sym(
        items.get(1).ok_or(ParseError::Syntax {
            line: 0,
            col: 0,
            expected: "action name".into(),
            found: "end of list".into(),
        })?,
        "action name",
    )?;

    let mut params: Vec<Parameter> = Vec::new();
    let mut preconditions = Vec::new();
    let mut add_effects = Vec::new();
    let mut del_effects = Vec::new();

    let mut i = 2;
    while i < items.len() {
        let key = expect_sym(&items[i], ":parameters/:precondition/:effect")?;
        let value = items.get(i + 1).ok_or_else(|| {
            let (line, col) = items[i].pos();
            ParseError::Syntax {
                line,
                col,
                expected: format!("value after {key}"),
                found: "end of list".into(),
            }
        })?;
        match key.as_str() {
            ":parameters" => {
                let list = expect_list(value, "parameter list")?;
                for (pname, ty) in parse_typed_list(list, TYPE_OBJECT)? {
                    if !pname.starts_with('?') {
                        return Err(ParseError::Type(format!(
                            "action {name}: parameter `{pname}` must be a ?variable"
                        )));
                    }
                    if ty != TYPE_OBJECT && !domain.types.contains_key(&ty) {
                        return Err(ParseError::Type(format!(
                            "action {name}: parameter {pname} has undeclared type {ty}"
                        )));
                    }
                    params.push(Parameter { name: pname[1..].to_string(), ty });
                }
            }
            ":precondition" => {
                for lit in parse_condition(value, &name)? {
                    preconditions.push(lit);
                }
            }
            ":effect" => {
                for lit in parse_condition(value, &name)? {
                    if lit.positive {
                        add_effects.push(lit.atom);
                    } else {
                        del_effects.push(lit.atom);
                    }
                }
            }
            other => {
                let (line, col) = items[i].pos();
                return Err(ParseError::Unsupported {
                    line,
                    col,
                    feature: format!("action field {other}"),
                });
            }
        }
        i += 2;
    }

    // Canonical member order so structural equality survives round-trips.
    preconditions.sort();
    preconditions.dedup();
    add_effects.sort();
    add_effects.dedup();
    del_effects.sort();
    del_effects.dedup();
    let schema = ActionSchema { name, params, preconditions, add_effects, del_effects };
    validate_action(&schema, domain)?;
    Ok(schema)
}

/// Parses `(and lit...)`, a single literal, or `()` into a literal list.
fn parse_condition(sexp: &Sexp, action: &str) -> Result<Vec<SchemaLiteral>, ParseError> {
    let items = expect_list(sexp, "condition")?;
    if items.is_empty() {
        return Ok(Vec::new());
    }
    let head = expect_sym(&items[0], "condition head")?;
    match head.as_str() {
        "and" => {
            let mut out = Vec::new();
            for sub in &items[1..] {
                out.extend(parse_condition(sub, action)?);
            }
            Ok(out)
        }
        "not" => {
            if items.len() != 2 {
                let (line, col) = sexp.pos();
                return Err(ParseError::Syntax {
                    line,
                    col,
                    expected: "(not ATOM)".into(),
                    found: sexp.describe(),
                });
            }
            let inner = parse_condition(&items[1], action)?;
            if inner.len() != 1 || !inner[0].positive {
                let (line, col) = sexp.pos();
                return Err(ParseError::Unsupported {
                    line,
                    col,
                    feature: "nested or non-atomic negation".into(),
                });
            }
            Ok(vec![SchemaLiteral { atom: inner.into_iter().next().unwrap().atom, positive: false }])
        }
        "or" | "forall" | "exists" | "when" | "imply" | "increase" | "decrease" | "assign"
        | "=" | "<" | ">" | "<=" | ">=" => {
            let (line, col) = sexp.pos();
            Err(ParseError::Unsupported { line, col, feature: format!("construct `{head}`") })
        }
        _ => {
            let mut args = Vec::new();
            for arg in &items[1..] {
                let sym = expect_sym(arg, "atom argument")?;
                if let Some(v) = sym.strip_prefix('?') {
                    args.push(Term::Var(v.to_string()));
                } else {
                    args.push(Term::Const(sym));
                }
            }
            Ok(vec![SchemaLiteral {
                atom: SchemaAtom { predicate: head, args },
                positive: true,
            }])
        }
    }
}

fn validate_action(schema: &ActionSchema, domain: &Domain) -> Result<(), ParseError> {
    let param_names: BTreeSet<&str> = schema.params.iter().map(|p| p.name.as_str()).collect();
    let check_atom = |atom: &SchemaAtom| -> Result<(), ParseError> {
        let pred = domain.predicates.get(&atom.predicate).ok_or(ParseError::Unknown {
            kind: "predicate",
            name: atom.predicate.clone(),
        })?;
        if pred.arity() != atom.args.len() {
            return Err(ParseError::Arity {
                predicate: atom.predicate.clone(),
                want: pred.arity(),
                got: atom.args.len(),
            });
        }
        for arg in &atom.args {
            if let Term::Var(v) = arg {
                if !param_names.contains(v.as_str()) {
                    return Err(ParseError::Type(format!(
                        "action {}: variable ?{v} in {} is not a parameter",
                        schema.name, atom.predicate
                    )));
                }
            }
        }
        Ok(())
    };
    for lit in &schema.preconditions {
        check_atom(&lit.atom)?;
    }
    for atom in schema.add_effects.iter().chain(schema.del_effects.iter()) {
        check_atom(atom)?;
    }
    for add in &schema.add_effects {
        if schema.del_effects.contains(add) {
            return Err(ParseError::EffectOverlap {
                action: schema.name.clone(),
                atom: format!("{}({:?})", add.predicate, add.args),
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Problem

/// Parse a PDDL problem against an already-parsed domain.
pub fn parse_problem(text: &str, domain: &Domain) -> Result<Problem, ParseError> {
    let root = parse_sexp(text)?;
    let items = expect_list(&root, "(define ...)")?;
    let mut iter = items.iter().peekable();
    let (line, col) = root.pos();
    if expect_sym(
        iter.next().ok_or(ParseError::Syntax {
            line,
            col,
            expected: "`define`".into(),
            found: "empty list".into(),
        })?,
        "define",
    )? != "define"
    {
        return Err(ParseError::Syntax {
            line,
            col,
            expected: "`define`".into(),
            found: "other symbol".into(),
        });
    }

    let head = iter.next().ok_or(ParseError::Syntax {
        line,
        col,
        expected: "(problem NAME)".into(),
        found: "end of list".into(),
    })?;
    let head_items = expect_list(head, "(problem NAME)")?;
    if head_items.len() != 2 || expect_sym(&head_items[0], "problem")? != "problem" {
        let (line, col) = head.pos();
        return Err(ParseError::Syntax {
            line,
            col,
            expected: "(problem NAME)".into(),
            found: head.describe(),
        });
    }

    let mut problem = Problem {
        name: expect_sym(&head_items[1], "problem name")?,
        domain_name: String::new(),
        objects: BTreeMap::new(),
        init: SymbolicState::new(),
        goal: BTreeSet::new(),
    };

    for section in iter {
        let sec_items = expect_list(section, "problem section")?;
        let tag = match sec_items.first() {
            Some(s) => expect_sym(s, "section tag")?,
            None => continue,
        };
        match tag.as_str() {
            ":domain" => {
                problem.domain_name = expect_sym(&sec_items[1], "domain name")?;
                if problem.domain_name != domain.name {
                    return Err(ParseError::DomainMismatch {
                        want: problem.domain_name.clone(),
                        got: domain.name.clone(),
                    });
                }
            }
            ":objects" => {
                for (obj, ty) in parse_typed_list(&sec_items[1..], TYPE_OBJECT)? {
                    if ty != TYPE_OBJECT && !domain.types.contains_key(&ty) {
                        return Err(ParseError::Unknown { kind: "type", name: ty });
                    }
                    if problem.objects.insert(obj.clone(), ty).is_some() {
                        return Err(ParseError::Duplicate { kind: "object", name: obj });
                    }
                }
            }
            ":init" => {
                for atom_sexp in &sec_items[1..] {
                    let lits = parse_condition(atom_sexp, "init")?;
                    for lit in lits {
                        if !lit.positive {
                            let (line, col) = atom_sexp.pos();
                            return Err(ParseError::Unsupported {
                                line,
                                col,
                                feature: "negative literal in :init (closed world)".into(),
                            });
                        }
                        let atom = ground_schema_atom(&lit.atom, domain, &problem.objects)?;
                        problem.init.insert(atom);
                    }
                }
            }
            ":goal" => {
                let lits = parse_condition(&sec_items[1], "goal")?;
                for lit in lits {
                    let atom = ground_schema_atom(&lit.atom, domain, &problem.objects)?;
                    problem.goal.insert(GroundLiteral { atom, positive: lit.positive });
                }
            }
            other => {
                let (line, col) = section.pos();
                return Err(ParseError::Unsupported {
                    line,
                    col,
                    feature: format!("section {other}"),
                });
            }
        }
    }

    Ok(problem)
}

/// Instantiate a parsed atom whose arguments must all be declared objects,
/// checking arity and argument types against the domain.
fn ground_schema_atom(
    atom: &SchemaAtom,
    domain: &Domain,
    objects: &BTreeMap<String, String>,
) -> Result<GroundAtom, ParseError> {
    let pred = domain.predicates.get(&atom.predicate).ok_or(ParseError::Unknown {
        kind: "predicate",
        name: atom.predicate.clone(),
    })?;
    if pred.arity() != atom.args.len() {
        return Err(ParseError::Arity {
            predicate: atom.predicate.clone(),
            want: pred.arity(),
            got: atom.args.len(),
        });
    }
    let mut args = Vec::with_capacity(atom.args.len());
    for (term, want_ty) in atom.args.iter().zip(&pred.param_types) {
        match term {
            Term::Var(v) => {
                return Err(ParseError::Type(format!(
                    "variable ?{v} not allowed in ground atom {}",
                    atom.predicate
                )))
            }
            Term::Const(obj) => {
                let obj_ty = objects.get(obj).ok_or(ParseError::Unknown {
                    kind: "object",
                    name: obj.clone(),
                })?;
                if !domain.is_subtype(obj_ty, want_ty) {
                    return Err(ParseError::Type(format!(
                        "object {obj} of type {obj_ty} does not satisfy {} parameter type {want_ty}",
                        atom.predicate
                    )));
                }
                args.push(obj.clone());
            }
        }
    }
    Ok(GroundAtom { predicate: atom.predicate.clone(), args })
}

/// Parse a single signed ground literal written as `pred(a, b)`,
/// `pred a b`, `not pred(a)`, or `!pred(a)`. Used by scenario files and
/// the CLI, not by the PDDL text format itself.
pub fn parse_literal_text(text: &str) -> Result<GroundLiteral, ParseError> {
    let trimmed = text.trim().to_lowercase();
    let (positive, rest) = if let Some(r) = trimmed.strip_prefix("not ") {
        (false, r.trim())
    } else if let Some(r) = trimmed.strip_prefix('!') {
        (false, r.trim())
    } else {
        (true, trimmed.as_str())
    };
    let (name, args) = match rest.find('(') {
        Some(open) => {
            let close = rest.rfind(')').ok_or(ParseError::Syntax {
                line: 1,
                col: rest.len(),
                expected: "`)`".into(),
                found: "end of input".into(),
            })?;
            let name = rest[..open].trim().to_string();
            let inner = &rest[open + 1..close];
            let args: Vec<String> = inner
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            (name, args)
        }
        None => {
            let mut parts = rest.split_whitespace().map(str::to_string);
            let name = parts.next().unwrap_or_default();
            (name, parts.collect())
        }
    };
    if name.is_empty() {
        return Err(ParseError::Syntax {
            line: 1,
            col: 1,
            expected: "predicate name".into(),
            found: "empty literal".into(),
        });
    }
    Ok(GroundLiteral { atom: GroundAtom { predicate: name, args }, positive })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINI_DOMAIN: &str = r#"
(define (domain mini)
  (:requirements :strips :typing :negative-preconditions)
  (:types item - object)
  (:predicates (inview ?o - item) (hand_empty) (inhand ?o - item))
  (:action grasp
    :parameters (?o - item)
    :precondition (and (inview ?o) (hand_empty))
    :effect (and (inhand ?o) (not (hand_empty)))))
"#;

    #[test]
    fn parses_table_style_action() {
        let d = parse_domain(MINI_DOMAIN).unwrap();
        assert_eq!(d.actions.len(), 1);
        assert_eq!(d.predicates.len(), 3);
        let grasp = d.action("grasp").unwrap();
        assert_eq!(grasp.preconditions.len(), 2);
        assert_eq!(grasp.add_effects.len(), 1);
        assert_eq!(grasp.del_effects.len(), 1);
    }

    #[test]
    fn degenerate_domain_without_actions() {
        let d = parse_domain(
            "(define (domain empty) (:requirements :strips) (:predicates (p ?x)))",
        )
        .unwrap();
        assert!(d.actions.is_empty());
        assert_eq!(d.predicates.len(), 1);
    }

    #[test]
    fn undeclared_effect_variable_rejected() {
        let err = parse_domain(
            r#"(define (domain bad)
                 (:predicates (p ?x))
                 (:action a :parameters (?x) :precondition (p ?x) :effect (p ?y)))"#,
        )
        .unwrap_err();
        assert!(matches!(err, ParseError::Type(_)), "{err}");
    }

    #[test]
    fn unsupported_feature_named() {
        let err = parse_domain(
            r#"(define (domain bad)
                 (:predicates (p ?x))
                 (:action a :parameters (?x) :precondition (forall (?y) (p ?y)) :effect (p ?x)))"#,
        )
        .unwrap_err();
        match err {
            ParseError::Unsupported { feature, .. } => assert!(feature.contains("forall")),
            other => panic!("expected unsupported-feature error, got {other}"),
        }
    }

    #[test]
    fn syntax_error_carries_position() {
        let err = parse_domain("(define (domain x) (:predicates (p ?x))").unwrap_err();
        match err {
            ParseError::Syntax { line, col, .. } => {
                assert!(line >= 1 && col >= 1);
            }
            other => panic!("expected syntax error, got {other}"),
        }
    }

    #[test]
    fn arity_mismatch_detected() {
        let err = parse_domain(
            r#"(define (domain bad)
                 (:predicates (p ?x ?y))
                 (:action a :parameters (?x) :precondition (p ?x) :effect (p ?x)))"#,
        )
        .unwrap_err();
        assert!(matches!(err, ParseError::Arity { .. }), "{err}");
    }

    #[test]
    fn problem_parses_and_checks_objects() {
        let d = parse_domain(MINI_DOMAIN).unwrap();
        let p = parse_problem(
            r#"(define (problem t) (:domain mini)
                 (:objects cup - item)
                 (:init (inview cup) (hand_empty))
                 (:goal (inhand cup)))"#,
            &d,
        )
        .unwrap();
        assert_eq!(p.init.len(), 2);
        assert_eq!(p.goal.len(), 1);

        let err = parse_problem(
            r#"(define (problem t) (:domain mini)
                 (:objects cup - item)
                 (:init (hand_empty))
                 (:goal (inhand bowl)))"#,
            &d,
        )
        .unwrap_err();
        assert!(matches!(err, ParseError::Unknown { kind: "object", .. }), "{err}");
    }

    #[test]
    fn literal_text_forms() {
        let l = parse_literal_text("on(cup, table)").unwrap();
        assert!(l.positive);
        assert_eq!(l.atom, GroundAtom::new("on", &["cup", "table"]));
        let n = parse_literal_text("not open(cabinet)").unwrap();
        assert!(!n.positive);
        let z = parse_literal_text("hand_empty").unwrap();
        assert!(z.atom.args.is_empty());
    }
}
