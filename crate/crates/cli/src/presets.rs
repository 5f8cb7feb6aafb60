//! Built-in scenario files.

pub const PRESETS: &[(&str, &str)] = &[
    ("fig2", include_str!("../presets/fig2.conf")),
    ("fig3", include_str!("../presets/fig3.conf")),
    ("fig4", include_str!("../presets/fig4.conf")),
    ("fig5", include_str!("../presets/fig5.conf")),
    ("fig6", include_str!("../presets/fig6.conf")),
    ("fig7", include_str!("../presets/fig7.conf")),
    ("fig8", include_str!("../presets/fig8.conf")),
    ("fig9", include_str!("../presets/fig9.conf")),
    ("fig10", include_str!("../presets/fig10.conf")),
    ("fig11", include_str!("../presets/fig11.conf")),
    ("fig11-dl", include_str!("../presets/fig11-dl.conf")),
];

pub fn preset(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Scenario;

    #[test]
    fn every_preset_resolves() {
        for (name, text) in PRESETS {
            let s = Scenario::from_text(text, name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(&s.name, name);
        }
    }
}
