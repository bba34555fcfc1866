//! The diagram-expression evaluator behind `gtl compute`.

use std::path::Path;

use graded_tl::basis_change::{apply_x, apply_y};
use graded_tl::graded::{alpha, cup, GradedElement};
use graded_tl::tower::{conditional_expectation, jones};
use graded_tl::Element;

enum Arg {
    Elem(GradedElement),
    Int(i64),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            src,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, want: char) -> Result<(), String> {
        match self.bump() {
            Some(c) if c == want => Ok(()),
            other => Err(format!(
                "expected '{want}' at position {} of '{}', found {other:?}",
                self.pos, self.src
            )),
        }
    }

    fn parse_arg(&mut self) -> Result<Arg, String> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '-' => {
                let start = self.pos;
                self.pos += 1;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(char::is_ascii_digit)
                {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                text.parse()
                    .map(Arg::Int)
                    .map_err(|e| format!("bad integer '{text}': {e}"))
            }
            _ => self.parse_expr().map(Arg::Elem),
        }
    }

    fn parse_expr(&mut self) -> Result<GradedElement, String> {
        match self.peek() {
            Some('@') => {
                self.pos += 1;
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| !c.is_whitespace() && *c != ',' && *c != ')')
                {
                    self.pos += 1;
                }
                let path: String = self.chars[start..self.pos].iter().collect();
                load_element(Path::new(&path))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos]
                    .iter()
                    .collect::<String>()
                    .to_ascii_lowercase();
                self.expect('(')?;
                let mut args = Vec::new();
                if self.peek() != Some(')') {
                    loop {
                        args.push(self.parse_arg()?);
                        match self.peek() {
                            Some(',') => {
                                self.pos += 1;
                            }
                            _ => break,
                        }
                    }
                }
                self.expect(')')?;
                apply(&name, args)
            }
            other => Err(format!(
                "expected an expression at position {} of '{}', found {other:?}",
                self.pos, self.src
            )),
        }
    }
}

fn load_element(path: &Path) -> Result<GradedElement, String> {
    let data =
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {path:?}: {e}"))?;
    serde_json::from_str::<GradedElement>(&data)
        .or_else(|_| serde_json::from_str::<Element>(&data).map(GradedElement::from_element))
        .map_err(|e| format!("bad element JSON in {path:?}: {e}"))
}

fn want_int(args: &[Arg], i: usize, name: &str) -> Result<usize, String> {
    match args.get(i) {
        Some(Arg::Int(v)) if *v >= 0 => Ok(*v as usize),
        _ => Err(format!("{name}: argument {} must be a nonnegative integer", i + 1)),
    }
}

fn want_elem<'a>(args: &'a [Arg], i: usize, name: &str) -> Result<&'a GradedElement, String> {
    match args.get(i) {
        Some(Arg::Elem(e)) => Ok(e),
        _ => Err(format!("{name}: argument {} must be an element expression", i + 1)),
    }
}

fn arity(args: &[Arg], want: usize, name: &str) -> Result<(), String> {
    if args.len() == want {
        Ok(())
    } else {
        Err(format!("{name} takes {want} argument(s), got {}", args.len()))
    }
}

fn apply(name: &str, args: Vec<Arg>) -> Result<GradedElement, String> {
    match name {
        "cup" => {
            arity(&args, 1, name)?;
            Ok(cup(want_int(&args, 0, name)?))
        }
        "one" => {
            arity(&args, 1, name)?;
            Ok(GradedElement::unit(want_int(&args, 0, name)?))
        }
        "alpha" => {
            arity(&args, 1, name)?;
            Ok(alpha(want_int(&args, 0, name)?))
        }
        "jones" => {
            arity(&args, 2, name)?;
            jones(want_int(&args, 0, name)?, want_int(&args, 1, name)?)
                .map_err(|e| format!("{e}"))
        }
        "xpq" => {
            arity(&args, 3, name)?;
            let e = want_elem(&args, 0, name)?;
            let p = want_int(&args, 1, name)?;
            let q = want_int(&args, 2, name)?;
            let mut out = GradedElement::zero(e.context());
            for (_, part) in e.parts() {
                out = out.add(&GradedElement::from_element(part.xpq(p, q)));
            }
            Ok(out)
        }
        "star" => {
            arity(&args, 2, name)?;
            want_elem(&args, 0, name)?
                .star(want_elem(&args, 1, name)?)
                .map_err(|e| format!("{e}"))
        }
        "bullet" => {
            arity(&args, 2, name)?;
            want_elem(&args, 0, name)?
                .bullet(want_elem(&args, 1, name)?)
                .map_err(|e| format!("{e}"))
        }
        "x" => {
            arity(&args, 1, name)?;
            Ok(apply_x(want_elem(&args, 0, name)?))
        }
        "y" => {
            arity(&args, 1, name)?;
            Ok(apply_y(want_elem(&args, 0, name)?))
        }
        "expect" | "e" => {
            arity(&args, 1, name)?;
            conditional_expectation(want_elem(&args, 0, name)?).map_err(|e| format!("{e}"))
        }
        "involution" => {
            arity(&args, 1, name)?;
            Ok(want_elem(&args, 0, name)?.involution())
        }
        "include" => {
            arity(&args, 1, name)?;
            Ok(want_elem(&args, 0, name)?.include())
        }
        "add" => {
            arity(&args, 2, name)?;
            Ok(want_elem(&args, 0, name)?.add(want_elem(&args, 1, name)?))
        }
        "sub" => {
            arity(&args, 2, name)?;
            Ok(want_elem(&args, 0, name)?.sub(want_elem(&args, 1, name)?))
        }
        other => Err(format!(
            "unknown function '{other}'; available: cup, one, alpha, jones, xpq, star, bullet, x, y, expect, involution, include, add, sub"
        )),
    }
}

pub fn evaluate(expression: &str) -> Result<GradedElement, String> {
    let mut parser = Parser::new(expression);
    let value = parser.parse_expr()?;
    if parser.peek().is_some() {
        return Err(format!(
            "trailing input at position {} of '{}'",
            parser.pos, expression
        ));
    }
    Ok(value)
}

pub fn cmd_compute(expression: &str, out: Option<&Path>) -> Result<i32, String> {
    let value = evaluate(expression)?;
    let json = serde_json::to_string_pretty(&value).expect("element serialises");
    match out {
        None => println!("{json}"),
        Some(path) => {
            std::fs::write(path, json).map_err(|e| format!("cannot write {path:?}: {e}"))?
        }
    }
    Ok(0)
}
