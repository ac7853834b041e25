mod common;

use common::*;
use easytype::surface::{
    parse_expr, parse_program, pretty_expr, pretty_program, Expr, ExprKind, Pattern, PatternKind,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn pretty_then_parse_is_identity(seed in any::<u64>(), size in 1usize..25) {
        let mut rng = StdRng::seed_from_u64(seed);
        let e = TermGen::new(&mut rng).term(size, &mut Vec::new());
        let text = pretty_expr(&e);
        let back = parse_expr(&text, "gen.src")
            .map_err(|err| TestCaseError::fail(format!("{text}\n{err}")))?;
        prop_assert_eq!(&back, &e, "{}", text);
    }

    #[test]
    fn program_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let body = TermGen::new(&mut rng).term(12, &mut Vec::new());
        let prog = single_def_program(body);
        let text = pretty_program(&prog);
        let back = parse_program(&text, "gen.src").unwrap();
        prop_assert_eq!(back.defs.len(), 1);
        prop_assert_eq!(&back.defs[0].body, &prog.defs[0].body);
    }
}

fn check_pattern_spans(p: &Pattern) {
    let inner: Vec<&Pattern> = match &p.kind {
        PatternKind::Tuple(ps) => ps.iter().collect(),
        PatternKind::Cons(h, t) => vec![h, t],
        PatternKind::Annot(q, _) => vec![q],
        _ => vec![],
    };
    for q in inner {
        assert!(p.span.contains(&q.span), "{:?} within {:?}", q.span, p.span);
        check_pattern_spans(q);
    }
}

fn check_spans(e: &Expr) {
    let mut children: Vec<&Expr> = Vec::new();
    match &e.kind {
        ExprKind::Fun(ps, b) => {
            ps.iter().for_each(|p| {
                assert!(e.span.contains(&p.span));
                check_pattern_spans(p);
            });
            children.push(b);
        }
        ExprKind::App(f, args) => {
            children.push(f);
            children.extend(args);
        }
        ExprKind::Let { bound, body, .. } => children.extend([&**bound, &**body]),
        ExprKind::If(c, t, f) => {
            children.extend([&**c, &**t]);
            children.extend(f.as_deref());
        }
        ExprKind::Match(s, arms) => {
            children.push(s);
            for (p, b) in arms {
                assert!(e.span.contains(&p.span));
                check_pattern_spans(p);
                children.push(b);
            }
        }
        ExprKind::While(a, b) | ExprKind::Seq(a, b) => children.extend([&**a, &**b]),
        ExprKind::Tuple(es) | ExprKind::ListLit(es) => children.extend(es),
        ExprKind::Annot(x, _) => children.push(x),
        _ => {}
    }
    for c in children {
        assert!(e.span.contains(&c.span), "{} within {}", c.span, e.span);
        check_spans(c);
    }
}

#[test]
fn corpus_spans_nest() {
    for (name, src) in corpus_programs("") {
        let Ok(prog) = parse_program(&src, &name) else {
            assert!(name.starts_with("err_parse"), "{name}");
            continue;
        };
        for def in &prog.defs {
            assert!(def.span.contains(&def.body.span), "{name}");
            check_spans(&def.body);
        }
    }
}

#[test]
fn corpus_pretty_round_trip() {
    for (name, src) in corpus_programs("") {
        let Ok(prog) = parse_program(&src, &name) else {
            continue;
        };
        let text = pretty_program(&prog);
        let back = parse_program(&text, &name).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
        let shape = |p: &easytype::surface::Program| {
            p.defs
                .iter()
                .map(|d| (d.name.clone(), d.is_rec, d.body.clone()))
                .collect::<Vec<_>>()
        };
        assert_eq!(shape(&back), shape(&prog), "{name}\n{text}");
    }
}

#[test]
fn byte_offsets_match_text() {
    let src = "let s = \"héllo\" ^ \"x\"\nlet n = String.length s";
    let prog = parse_program(src, "u.src").unwrap();
    let last = &prog.defs[1].body;
    assert_eq!(
        &src[last.span.byte_start..last.span.byte_end],
        "String.length s"
    );
    assert_eq!((last.span.start_line, last.span.start_col), (2, 9));
}
