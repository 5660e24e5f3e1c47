use sturmian::singular::{Factor, Target};
use sturmian::Word;

use crate::Format;

/// Output settings shared by every command.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Style {
    pub format: Format,
    pub unicode: bool,
}

impl Style {
    pub fn new(format: Format, unicode: bool) -> Self {
        Style { format, unicode }
    }

    pub fn json(&self) -> bool {
        self.format == Format::Json
    }

    /// A finite word; the empty word is `ε` with `--unicode` and `eps` otherwise.
    pub fn word(&self, x: &Word) -> String {
        match (x.is_empty(), self.unicode) {
            (false, _) => x.to_string(),
            (true, true) => "ε".to_string(),
            (true, false) => "eps".to_string(),
        }
    }

    /// `σ` / `s`, or `σ̂` / `S` for the complementary word.
    pub fn sigma(&self, target: Target) -> &'static str {
        match (target, self.unicode) {
            (Target::Alpha, true) => "σ",
            (Target::Alpha, false) => "s",
            (Target::Complement, true) => "σ̂",
            (Target::Complement, false) => "S",
        }
    }

    /// `(σ^{j+1})_t(x)`.
    pub fn factor_label(&self, factor: &Factor, target: Target) -> String {
        format!(
            "({}^{})_{{{}}}({})",
            self.sigma(target),
            factor.j + 1,
            factor.conjugate_index,
            factor.letter_arg.as_char()
        )
    }

    /// `c_α` or `c_{1-α}`.
    pub fn target_name(&self, target: Target) -> &'static str {
        match (target, self.unicode) {
            (Target::Alpha, true) => "c_α",
            (Target::Alpha, false) => "c",
            (Target::Complement, true) => "c_{1−α}",
            (Target::Complement, false) => "c'",
        }
    }
}
