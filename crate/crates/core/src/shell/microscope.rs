use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::context::NumContext;
use crate::error::{HyperError, Result};
use crate::hyperfield::HyperValue;
use crate::scalar::Scalar;
use crate::transfer::{eval_star, FuncExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Svg,
    Ascii,
}

impl FromStr for Format {
    type Err = HyperError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svg" => Ok(Format::Svg),
            "ascii" => Ok(Format::Ascii),
            _ => Err(HyperError::InvalidArgument(format!("unknown format `{s}`; use svg or ascii"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPoint<C> {
    pub label: String,
    pub value: HyperValue<C>,
}

/// Where a point lands on the magnified number line.
#[derive(Debug, Clone, PartialEq)]
pub enum Abscissa<C> {
    At(C),
    /// `(x - c)/s` is infinite; the sign says which side.
    OffScale(i8),
}

/// A number line centred at `center` where one unit is `scale`.
#[derive(Debug, Clone, PartialEq)]
pub struct MicroscopeScene<C> {
    pub caption: String,
    pub center: HyperValue<C>,
    pub scale: HyperValue<C>,
    pub points: Vec<LabeledPoint<C>>,
}

impl<C: Scalar> MicroscopeScene<C> {
    pub fn new(
        caption: impl Into<String>,
        center: HyperValue<C>,
        scale: HyperValue<C>,
        points: Vec<LabeledPoint<C>>,
    ) -> Result<Self> {
        if scale.signum() <= 0 {
            return Err(HyperError::InvalidScale);
        }
        Ok(MicroscopeScene {
            caption: caption.into(),
            center,
            scale,
            points,
        })
    }

    /// `st((x - c)/s)` for each point.
    pub fn abscissae(&self) -> Result<Vec<Abscissa<C>>> {
        if self.scale.signum() <= 0 {
            return Err(HyperError::InvalidScale);
        }
        self.points
            .iter()
            .map(|p| {
                let q = p.value.sub(&self.center)?.div(&self.scale)?;
                Ok(match q.standard_part() {
                    Ok(a) => Abscissa::At(a),
                    Err(_) => Abscissa::OffScale(q.signum()),
                })
            })
            .collect()
    }

    pub fn render(&self, format: Format) -> Result<String> {
        microscope(self, format)
    }
}

/// One or more stacked scenes with a title and closing notes.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure<C> {
    pub title: String,
    pub panels: Vec<MicroscopeScene<C>>,
    pub notes: Vec<String>,
}

struct Laid {
    half_range: i64,
    marks: Vec<(String, Option<BigRational>, i8)>,
}

fn lay_out<C: Scalar>(scene: &MicroscopeScene<C>) -> Result<Laid> {
    let mut marks = Vec::new();
    let mut widest = BigRational::one();
    for (p, a) in scene.points.iter().zip(scene.abscissae()?) {
        match a {
            Abscissa::At(v) => {
                let q = v
                    .to_rational()
                    .ok_or_else(|| HyperError::InvalidArgument(format!("abscissa {v} is not a number")))?;
                if Signed::abs(&q) > widest {
                    widest = Signed::abs(&q);
                }
                marks.push((p.label.clone(), Some(q), 0));
            }
            Abscissa::OffScale(side) => marks.push((p.label.clone(), None, side)),
        }
    }
    let half_range = widest
        .ceil()
        .to_integer()
        .to_i64()
        .ok_or_else(|| HyperError::InvalidArgument("abscissa out of range".into()))?
        + 1;
    Ok(Laid { half_range, marks })
}

fn round_half_up(q: &BigRational) -> BigInt {
    (q + BigRational::new(1.into(), 2.into())).floor().to_integer()
}

fn abscissa_text(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        q.to_string()
    }
}

/// Draws a single scene.
pub fn microscope<C: Scalar>(scene: &MicroscopeScene<C>, format: Format) -> Result<String> {
    let fig = Figure {
        title: scene.caption.clone(),
        panels: vec![MicroscopeScene {
            caption: String::new(),
            ..scene.clone()
        }],
        notes: Vec::new(),
    };
    fig.render(format)
}

const UNIT_COLS: i64 = 8;

impl<C: Scalar> Figure<C> {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Svg => self.to_svg(),
            Format::Ascii => self.to_ascii(),
        }
    }

    pub fn to_ascii(&self) -> Result<String> {
        let mut out = String::new();
        writeln!(out, "{}", self.title).unwrap();
        for scene in &self.panels {
            let laid = lay_out(scene)?;
            let r = laid.half_range;
            let width = (2 * r * UNIT_COLS + 1) as usize;
            let col = |q: &BigRational| -> usize {
                let c = round_half_up(&((q + BigRational::from_integer(r.into())) * BigInt::from(UNIT_COLS)));
                c.to_usize().unwrap_or(0).min(width - 1)
            };
            out.push('\n');
            if !scene.caption.is_empty() {
                writeln!(out, "{}", scene.caption).unwrap();
            }
            writeln!(out, "0 = {}, unit = {}", scene.center, scene.scale).unwrap();
            let mut axis: Vec<char> = (0..width)
                .map(|i| if i as i64 % UNIT_COLS == 0 { '+' } else { '-' })
                .collect();
            for (_, at, side) in &laid.marks {
                match at {
                    Some(q) => axis[col(q)] = 'o',
                    None if *side < 0 => axis[0] = '<',
                    None => axis[width - 1] = '>',
                }
            }
            writeln!(out, "  {}", axis.iter().collect::<String>()).unwrap();
            let mut ticks = vec![' '; width + 4];
            for k in -r..=r {
                let text = k.to_string();
                let at = ((k + r) * UNIT_COLS) as usize + 2;
                let start = if k < 0 { (at + 1).saturating_sub(text.len()) } else { at };
                for (i, ch) in text.chars().enumerate() {
                    if let Some(slot) = ticks.get_mut(start + i) {
                        *slot = ch;
                    }
                }
            }
            writeln!(out, "{}", ticks.iter().collect::<String>().trim_end()).unwrap();
            for (label, at, side) in &laid.marks {
                match at {
                    Some(q) => writeln!(out, "  o {:>5}  {label}", abscissa_text(q)).unwrap(),
                    None => {
                        let (glyph, text) = if *side < 0 { ('<', "-inf") } else { ('>', "+inf") };
                        writeln!(out, "  {glyph} {text:>5}  {label} (off scale)").unwrap();
                    }
                }
            }
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for n in &self.notes {
                writeln!(out, "{n}").unwrap();
            }
        }
        Ok(out)
    }

    pub fn to_svg(&self) -> Result<String> {
        const WIDTH: i64 = 640;
        const LEFT: i64 = 60;
        const INNER: i64 = 520;
        const PANEL: i64 = 130;
        const TOP: i64 = 40;
        let height = TOP + PANEL * self.panels.len() as i64 + 24 * self.notes.len() as i64 + 20;
        let mut out = String::new();
        writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="monospace" font-size="13">"#
        )
        .unwrap();
        writeln!(out, "<title>{}</title>", escape(&self.title)).unwrap();
        writeln!(out, r#"<rect width="{WIDTH}" height="{height}" fill="white"/>"#).unwrap();
        writeln!(out, r#"<text x="20" y="26" font-size="15">{}</text>"#, escape(&self.title)).unwrap();
        for (i, scene) in self.panels.iter().enumerate() {
            let laid = lay_out(scene)?;
            let r = laid.half_range;
            let y0 = TOP + PANEL * i as i64;
            let axis_y = y0 + 70;
            let x_of = |q: &BigRational| -> String {
                let x = BigRational::from_integer(LEFT.into())
                    + (q + BigRational::from_integer(r.into())) * BigInt::from(INNER)
                        / BigInt::from(2 * r);
                px(&x)
            };
            writeln!(out, r#"<g id="panel{i}">"#).unwrap();
            let heading = if scene.caption.is_empty() {
                format!("0 = {}, unit = {}", scene.center, scene.scale)
            } else {
                format!("{}: 0 = {}, unit = {}", scene.caption, scene.center, scene.scale)
            };
            writeln!(out, r#"<text x="20" y="{}">{}</text>"#, y0 + 22, escape(&heading)).unwrap();
            writeln!(
                out,
                r#"<line x1="{LEFT}" y1="{axis_y}" x2="{}" y2="{axis_y}" stroke="black"/>"#,
                LEFT + INNER
            )
            .unwrap();
            for k in -r..=r {
                let x = x_of(&BigRational::from_integer(k.into()));
                writeln!(
                    out,
                    r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="black"/>"#,
                    axis_y - 5,
                    axis_y + 5
                )
                .unwrap();
                writeln!(out, r#"<text x="{x}" y="{}" text-anchor="middle">{k}</text>"#, axis_y + 22).unwrap();
            }
            for (label, at, side) in &laid.marks {
                match at {
                    Some(q) => {
                        let x = x_of(q);
                        writeln!(out, r#"<circle cx="{x}" cy="{axis_y}" r="5" fill="black"/>"#).unwrap();
                        writeln!(
                            out,
                            r#"<text x="{x}" y="{}" text-anchor="middle">{}</text>"#,
                            axis_y - 14,
                            escape(label)
                        )
                        .unwrap();
                    }
                    None => {
                        let (tip, base, anchor) = if *side < 0 {
                            (LEFT - 40, LEFT - 26, "start")
                        } else {
                            (LEFT + INNER + 40, LEFT + INNER + 26, "end")
                        };
                        writeln!(
                            out,
                            r#"<path d="M {tip} {axis_y} L {base} {} L {base} {} Z" fill="black"/>"#,
                            axis_y - 6,
                            axis_y + 6
                        )
                        .unwrap();
                        writeln!(
                            out,
                            r#"<text x="{tip}" y="{}" text-anchor="{anchor}">{} (off scale)</text>"#,
                            axis_y - 14,
                            escape(label)
                        )
                        .unwrap();
                    }
                }
            }
            writeln!(out, "</g>").unwrap();
        }
        let notes_y = TOP + PANEL * self.panels.len() as i64;
        for (i, n) in self.notes.iter().enumerate() {
            writeln!(out, r#"<text x="20" y="{}">{}</text>"#, notes_y + 24 * i as i64 + 10, escape(n)).unwrap();
        }
        writeln!(out, "</svg>").unwrap();
        Ok(out)
    }
}

/// Fixed-point pixel coordinate with at most two decimals.
fn px(x: &BigRational) -> String {
    let hundredths = round_half_up(&(x * BigInt::from(100)));
    let whole: BigInt = &hundredths / 100;
    let frac: BigInt = Signed::abs(&(&hundredths % 100));
    if frac.is_zero() {
        whole.to_string()
    } else if (&frac % BigInt::from(10)).is_zero() {
        format!("{whole}.{}", frac / BigInt::from(10))
    } else {
        format!("{whole}.{frac:02}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn point<C: Scalar>(v: HyperValue<C>) -> LabeledPoint<C> {
    LabeledPoint {
        label: v.to_string(),
        value: v,
    }
}

/// Three points infinitely close to 1, magnified so that `eps` is one unit.
pub fn figure2<C: Scalar>(ctx: &NumContext) -> Result<Figure<C>> {
    let one = HyperValue::one(ctx);
    let eps = HyperValue::tau(ctx);
    let scene = MicroscopeScene::new(
        "",
        one.clone(),
        eps.clone(),
        vec![point(one.sub(&eps)?), point(one.clone()), point(one.add(&eps)?)],
    )?;
    Ok(Figure {
        title: "1 - eps, 1 and 1 + eps seen at magnification 1/eps".into(),
        panels: vec![scene],
        notes: vec!["st(x) = 1 for all three points".into()],
    })
}

/// The slope of `x^2` at 1: the step `dx = -eps` and the matching change in
/// `x^2`, each under the same microscope.
pub fn figure3<C: Scalar>(ctx: &NumContext) -> Result<Figure<C>> {
    let f = FuncExpr::var().pow(2);
    let one = HyperValue::one(ctx);
    let eps = HyperValue::tau(ctx);
    let x = one.sub(&eps)?;
    let (fx, f1) = (eval_star(&f, &x)?, eval_star(&f, &one)?);
    let (dx, dy) = (x.sub(&one)?, fx.sub(&f1)?);
    let slope = dy.div(&dx)?;
    let run = MicroscopeScene::new(
        "x",
        one.clone(),
        eps.clone(),
        vec![point(x.clone()), point(one.clone())],
    )?;
    let rise = MicroscopeScene::new("x^2", f1.clone(), eps, vec![point(fx), point(f1)])?;
    Ok(Figure {
        title: format!("slope of x^2 between {x} and 1"),
        panels: vec![run, rise],
        notes: vec![
            format!("dx = {dx}, dy = {dy}"),
            format!("dy/dx = {slope}, st(dy/dx) = {}", slope.standard_part()?),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = BigRational;
    type H = HyperValue<Q>;

    fn ctx() -> NumContext {
        NumContext::exact()
    }

    fn at(v: i64) -> Abscissa<Q> {
        Abscissa::At(Q::from_integer(v.into()))
    }

    fn scene(center: H, scale: H, pts: Vec<H>) -> MicroscopeScene<Q> {
        MicroscopeScene::new("", center, scale, pts.into_iter().map(point).collect()).unwrap()
    }

    #[test]
    fn positions() {
        let c = ctx();
        let (one, eps) = (H::one(&c), H::tau(&c));
        let s = scene(one.clone(), eps.clone(), vec![&one - &eps, one.clone(), &one + &eps]);
        assert_eq!(s.abscissae().unwrap(), vec![at(-1), at(0), at(1)]);
        let two_eps = eps.scale(&Q::from_integer(2.into()));
        let s = scene(one.clone(), eps.clone(), vec![&one - &two_eps]);
        assert_eq!(s.abscissae().unwrap(), vec![at(-2)]);
        let s = scene(H::zero(&c), one.clone(), vec![H::zero(&c)]);
        assert_eq!(s.abscissae().unwrap(), vec![at(0)]);
    }

    #[test]
    fn linearity() {
        let c = ctx();
        let (one, eps) = (H::one(&c), H::tau(&c));
        let pts = vec![&one - &eps.scale(&Q::new(3.into(), 2.into())), &one + &eps];
        let base = scene(one.clone(), eps.clone(), pts.clone()).abscissae().unwrap();
        let doubled: Vec<H> = pts.iter().map(|p| &(&(p - &one) * &H::from_int(2, &c)) + &one).collect();
        let d = scene(one.clone(), eps.clone(), doubled).abscissae().unwrap();
        let wide = scene(one.clone(), eps.scale(&Q::from_integer(2.into())), pts).abscissae().unwrap();
        for ((b, d), w) in base.iter().zip(&d).zip(&wide) {
            let (Abscissa::At(b), Abscissa::At(d), Abscissa::At(w)) = (b, d, w) else { panic!() };
            assert_eq!(*d, b * Q::from_integer(2.into()));
            assert_eq!(*w, b / Q::from_integer(2.into()));
        }
    }

    #[test]
    fn off_scale_and_bad_scale() {
        let c = ctx();
        let (one, eps) = (H::one(&c), H::tau(&c));
        let s = scene(one.clone(), eps.clone(), vec![H::from_int(2, &c), H::zero(&c)]);
        assert_eq!(s.abscissae().unwrap(), vec![Abscissa::OffScale(1), Abscissa::OffScale(-1)]);
        let text = s.render(Format::Ascii).unwrap();
        assert!(text.contains("<") && text.contains(">"), "{text}");
        assert!(s.render(Format::Svg).unwrap().contains("(off scale)"));
        let bad = MicroscopeScene::new("", one.clone(), eps.neg(), vec![]);
        assert_eq!(bad.unwrap_err(), HyperError::InvalidScale);
        assert_eq!(MicroscopeScene::new("", one, H::zero(&c), vec![]).unwrap_err(), HyperError::InvalidScale);
    }

    #[test]
    fn figures_are_deterministic() {
        let c = ctx();
        for fmt in [Format::Svg, Format::Ascii] {
            let a = figure2::<Q>(&c).unwrap().render(fmt).unwrap();
            let b = figure2::<Q>(&c).unwrap().render(fmt).unwrap();
            assert_eq!(a, b);
            let a = figure3::<Q>(&c).unwrap().render(fmt).unwrap();
            assert_eq!(a, figure3::<Q>(&c).unwrap().render(fmt).unwrap());
        }
        let f3 = figure3::<Q>(&c).unwrap();
        assert_eq!(f3.notes[1], "dy/dx = 2 - eps, st(dy/dx) = 2");
    }

    #[test]
    fn pixel_format() {
        assert_eq!(px(&Q::new(1241.into(), 10.into())), "124.1");
        assert_eq!(px(&Q::from_integer(60.into())), "60");
        assert_eq!(px(&Q::new(1.into(), 3.into())), "0.33");
    }
}
