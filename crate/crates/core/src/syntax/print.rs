//! Minimally parenthesized, deterministic printer. `parse(render(f)) == f`
//! for every well-formed AST.

use super::Formula;

// Precedence levels: atoms 5, unary 4, '&' 3, '\/'/'\/+' 2, '||' 1.
fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Prop(_)
        | Formula::NegProp(_)
        | Formula::Bottom
        | Formula::Top
        | Formula::Ne
        | Formula::Dep { .. }
        | Formula::Inc { .. }
        | Formula::Ind { .. } => 5,
        Formula::Dia(_) | Formula::Box(_) | Formula::Bq(_, _) => 4,
        Formula::And(_, _) => 3,
        Formula::Split(_, _) | Formula::NeSplit(_, _) => 2,
        Formula::Or(_, _) => 1,
    }
}

pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_at(f, 0, &mut out);
    out
}

fn write_at(f: &Formula, min: u8, out: &mut String) {
    let level = prec(f);
    if level < min {
        out.push('(');
        write_node(f, out);
        out.push(')');
    } else {
        write_node(f, out);
    }
}

fn write_node(f: &Formula, out: &mut String) {
    match f {
        Formula::Prop(p) => out.push_str(p.as_str()),
        Formula::NegProp(p) => {
            out.push('~');
            out.push_str(p.as_str());
        }
        Formula::Bottom => out.push_str("bot"),
        Formula::Top => out.push_str("top"),
        Formula::Ne => out.push_str("NE"),
        Formula::Dep { args, target } => {
            out.push_str("=(");
            write_list(args, out);
            out.push_str(" ; ");
            write_at(target, 0, out);
            out.push(')');
        }
        Formula::Inc { left, right } => {
            out.push_str("inc(");
            write_list(left, out);
            out.push_str(" ; ");
            write_list(right, out);
            out.push(')');
        }
        Formula::Ind { left, right } => {
            out.push_str("ind(");
            write_list(left, out);
            out.push_str(" ; ");
            write_list(right, out);
            out.push(')');
        }
        Formula::And(l, r) => {
            write_at(l, 3, out);
            out.push_str(" & ");
            write_at(r, 4, out);
        }
        Formula::Split(l, r) => {
            write_at(l, 2, out);
            out.push_str(" \\/ ");
            write_at(r, 3, out);
        }
        Formula::NeSplit(l, r) => {
            write_at(l, 2, out);
            out.push_str(" \\/+ ");
            write_at(r, 3, out);
        }
        Formula::Or(l, r) => {
            write_at(l, 1, out);
            out.push_str(" || ");
            write_at(r, 2, out);
        }
        Formula::Dia(g) => {
            out.push_str("<> ");
            write_at(g, 4, out);
        }
        Formula::Box(g) => {
            out.push_str("[] ");
            write_at(g, 4, out);
        }
        Formula::Bq(p, g) => {
            out.push_str("E ");
            out.push_str(p.as_str());
            out.push_str(". ");
            write_at(g, 4, out);
        }
    }
}

fn write_list(items: &[Formula], out: &mut String) {
    for (i, f) in items.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_at(f, 0, out);
    }
}
