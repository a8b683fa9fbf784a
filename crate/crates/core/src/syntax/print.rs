use super::formula::Formula;
use super::interval::Interval;

// Binding strength, loosest first. Mirrors the parser.
const IFF: u8 = 1;
const UNTIL: u8 = 2;
const IMPLIES: u8 = 3;
const OR: u8 = 4;
const AND: u8 = 5;
const PREFIX: u8 = 6;
const ATOM: u8 = 7;

fn level(f: &Formula) -> u8 {
    use Formula::*;
    match f {
        True | False | Atom(_) => ATOM,
        Not(_) | Eventually(..) | Globally(..) | Next(..) | Count(..) => PREFIX,
        And(..) => AND,
        Or(..) => OR,
        Implies(..) => IMPLIES,
        Until(..) | Release(..) | ActionUntil(..) => UNTIL,
        Iff(..) => IFF,
    }
}

fn interval_text(j: &Interval) -> String {
    if j.is_unbounded() {
        String::new()
    } else {
        j.to_string()
    }
}

fn wrap(out: &mut String, f: &Formula, min_level: u8) {
    if level(f) < min_level {
        out.push('(');
        write(out, f);
        out.push(')');
    } else {
        write(out, f);
    }
}

fn write(out: &mut String, f: &Formula) {
    use Formula::*;
    let binary = |out: &mut String, a: &Formula, op: &str, b: &Formula, lvl: u8, right_assoc: bool| {
        let (la, lb) = if right_assoc { (lvl + 1, lvl) } else { (lvl, lvl + 1) };
        wrap(out, a, la);
        out.push(' ');
        out.push_str(op);
        out.push(' ');
        wrap(out, b, lb);
    };
    let prefix = |out: &mut String, op: String, a: &Formula| {
        out.push_str(&op);
        out.push(' ');
        wrap(out, a, PREFIX);
    };
    match f {
        True => out.push_str("true"),
        False => out.push_str("false"),
        Atom(a) => out.push_str(a.as_str()),
        Not(a) => {
            out.push('!');
            wrap(out, a, PREFIX);
        }
        And(a, b) => binary(out, a, "&", b, AND, false),
        Or(a, b) => binary(out, a, "|", b, OR, false),
        Implies(a, b) => binary(out, a, "->", b, IMPLIES, true),
        Iff(a, b) => binary(out, a, "<->", b, IFF, true),
        Until(j, a, b) => binary(out, a, &format!("U{}", interval_text(j)), b, UNTIL, true),
        Release(j, a, b) => binary(out, a, &format!("R{}", interval_text(j)), b, UNTIL, true),
        ActionUntil(j, a, b) => binary(out, a, &format!("AU{}", interval_text(j)), b, UNTIL, true),
        Eventually(j, a) => prefix(out, format!("F{}", interval_text(j)), a),
        Globally(j, a) => prefix(out, format!("G{}", interval_text(j)), a),
        Next(j, a) => prefix(out, format!("X{}", interval_text(j)), a),
        Count(n, j, a) => prefix(out, format!("C{{{n}}}{}", interval_text(j)), a),
    }
}

/// Canonical concrete syntax with the fewest parentheses the grammar allows.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write(&mut out, f);
    out
}
