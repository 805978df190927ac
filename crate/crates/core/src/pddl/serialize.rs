//! Canonical PDDL emission: lowercase symbols, deterministic section and
//! atom ordering, so `parse(serialize(parse(t)))` is a fixpoint.

use super::ast::*;
use std::fmt::Write;

fn write_schema_atom(out: &mut String, atom: &SchemaAtom) {
    out.push('(');
    out.push_str(&atom.predicate);
    for arg in &atom.args {
        out.push(' ');
        let _ = write!(out, "{arg}");
    }
    out.push(')');
}

fn write_ground_atom(out: &mut String, atom: &GroundAtom) {
    out.push('(');
    out.push_str(&atom.predicate);
    for arg in &atom.args {
        out.push(' ');
        out.push_str(arg);
    }
    out.push(')');
}

pub fn serialize_domain(domain: &Domain) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "(define (domain {})", domain.name);

    if !domain.requirements.is_empty() {
        let mut reqs = domain.requirements.clone();
        reqs.sort();
        reqs.dedup();
        let _ = writeln!(out, "  (:requirements {})", reqs.join(" "));
    }

    if !domain.types.is_empty() {
        out.push_str("  (:types");
        for (child, parent) in &domain.types {
            let _ = write!(out, " {child} - {parent}");
        }
        out.push_str(")\n");
    }

    if !domain.predicates.is_empty() {
        out.push_str("  (:predicates\n");
        for schema in domain.predicates.values() {
            out.push_str("    (");
            out.push_str(&schema.name);
            for (i, ty) in schema.param_types.iter().enumerate() {
                let _ = write!(out, " ?a{i} - {ty}");
            }
            out.push_str(")\n");
        }
        out.push_str("  )\n");
    }

    for action in domain.actions.values() {
        let _ = writeln!(out, "  (:action {}", action.name);
        out.push_str("    :parameters (");
        for (i, p) in action.params.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "?{} - {}", p.name, p.ty);
        }
        out.push_str(")\n");

        let mut pre = action.preconditions.clone();
        pre.sort();
        out.push_str("    :precondition (and");
        for lit in &pre {
            out.push(' ');
            if lit.positive {
                write_schema_atom(&mut out, &lit.atom);
            } else {
                out.push_str("(not ");
                write_schema_atom(&mut out, &lit.atom);
                out.push(')');
            }
        }
        out.push_str(")\n");

        let mut adds = action.add_effects.clone();
        adds.sort();
        let mut dels = action.del_effects.clone();
        dels.sort();
        out.push_str("    :effect (and");
        for atom in &adds {
            out.push(' ');
            write_schema_atom(&mut out, atom);
        }
        for atom in &dels {
            out.push_str(" (not ");
            write_schema_atom(&mut out, atom);
            out.push(')');
        }
        out.push_str(")\n  )\n");
    }

    out.push_str(")\n");
    out
}

pub fn serialize_problem(problem: &Problem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "(define (problem {})", problem.name);
    let _ = writeln!(out, "  (:domain {})", problem.domain_name);

    out.push_str("  (:objects");
    for (obj, ty) in &problem.objects {
        let _ = write!(out, " {obj} - {ty}");
    }
    out.push_str(")\n");

    out.push_str("  (:init\n");
    for atom in problem.init.iter() {
        out.push_str("    ");
        write_ground_atom(&mut out, atom);
        out.push('\n');
    }
    out.push_str("  )\n");

    out.push_str("  (:goal (and");
    for lit in &problem.goal {
        out.push(' ');
        if lit.positive {
            write_ground_atom(&mut out, &lit.atom);
        } else {
            out.push_str("(not ");
            write_ground_atom(&mut out, &lit.atom);
            out.push(')');
        }
    }
    out.push_str("))\n)\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pddl::parser::{parse_domain, parse_problem};

    const DOMAIN: &str = r#"
(define (domain mini)
  (:requirements :strips :typing :negative-preconditions)
  (:types item - object spot - object)
  (:predicates (at ?o - item ?s - spot) (hand_empty) (inhand ?o - item))
  (:action pick
    :parameters (?o - item ?s - spot)
    :precondition (and (at ?o ?s) (hand_empty))
    :effect (and (inhand ?o) (not (at ?o ?s)) (not (hand_empty))))
  (:action drop
    :parameters (?o - item ?s - spot)
    :precondition (inhand ?o)
    :effect (and (at ?o ?s) (hand_empty) (not (inhand ?o)))))
"#;

    const PROBLEM: &str = r#"
(define (problem move-cup) (:domain mini)
  (:objects CUP - item a b - spot)
  (:init (at cup a) (hand_empty))
  (:goal (and (at cup b) (not (inhand cup)))))
"#;

    #[test]
    fn domain_round_trip_is_fixpoint() {
        let d1 = parse_domain(DOMAIN).unwrap();
        let text = serialize_domain(&d1);
        let d2 = parse_domain(&text).unwrap();
        assert_eq!(d1, d2);
        assert_eq!(serialize_domain(&d2), text);
    }

    #[test]
    fn problem_round_trip_is_fixpoint() {
        let d = parse_domain(DOMAIN).unwrap();
        let p1 = parse_problem(PROBLEM, &d).unwrap();
        let text = serialize_problem(&p1);
        let p2 = parse_problem(&text, &d).unwrap();
        assert_eq!(p1, p2);
        assert_eq!(serialize_problem(&p2), text);
    }

    #[test]
    fn serializer_lowercases_via_parser() {
        let d = parse_domain(DOMAIN).unwrap();
        let p = parse_problem(PROBLEM, &d).unwrap();
        assert!(p.objects.contains_key("cup"));
        assert!(serialize_problem(&p).contains("cup - item"));
    }
}
