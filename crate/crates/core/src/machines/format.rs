use thiserror::Error;

use super::{Instr, Machine, MachineError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: expected label L{expected}, found L{found}")]
    LabelOrder { line: usize, expected: usize, found: usize },
    #[error(transparent)]
    Invalid(#[from] MachineError),
}

fn number(token: &str, prefix: char) -> Option<usize> {
    let digits = token.strip_prefix(prefix)?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Parse the program format: one `L<i>: <instruction>` per line with
/// labels in order from `L0`, counters `v<k>`, `#` comments.
pub fn parse_machine(text: &str) -> Result<Machine, MachineParseError> {
    let mut program = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |message: &str| MachineParseError::Syntax { line, message: message.to_string() };
        let (label, instr) = body.split_once(':').ok_or_else(|| err("expected `L<n>: <instruction>`"))?;
        let found = number(label.trim(), 'L').ok_or_else(|| err("labels are written L<n>"))?;
        if found != program.len() {
            return Err(MachineParseError::LabelOrder { line, expected: program.len(), found });
        }
        let tokens: Vec<&str> = instr.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
        let counter = |t: &str| number(t, 'v').ok_or_else(|| err("counters are written v<n>"));
        let target = |t: &str| number(t, 'L').ok_or_else(|| err("jump targets are written L<n>"));
        let parsed = match tokens[..] {
            ["halt"] => Instr::Halt,
            ["inc", v] => Instr::Inc { counter: counter(v)? },
            ["dec", v] => Instr::Dec { counter: counter(v)? },
            ["if", v, ">", "0", "goto", a, b] => {
                Instr::Branch { counter: counter(v)?, then_label: target(a)?, else_label: target(b)? }
            }
            _ => return Err(err("expected halt, inc v<n>, dec v<n> or if v<n> > 0 goto L<i>, L<j>")),
        };
        program.push(parsed);
    }
    Ok(Machine::from_program(program)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# guess\nL0: inc v0\nL1: if v0 > 0 goto L0, L2\nL2: dec v1\nL3: halt\n";
        let m = parse_machine(text).unwrap();
        assert_eq!(m.counters(), 2);
        assert_eq!(m.program()[1], Instr::Branch { counter: 0, then_label: 0, else_label: 2 });
        assert_eq!(parse_machine(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_machine("L1: halt"), Err(MachineParseError::LabelOrder { line: 1, .. })));
        assert!(matches!(parse_machine("L0: jump"), Err(MachineParseError::Syntax { line: 1, .. })));
        assert!(matches!(parse_machine("L0: inc v0"), Err(MachineParseError::Invalid(MachineError::NoHalt))));
    }
}
