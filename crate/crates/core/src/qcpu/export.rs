//! Text and Graphviz DOT renderings of networks.
//!
//! Both formats are deterministic. Factor nodes are named `f_<m>_<n>`,
//! connector nodes `conn_<i>` and composed blocks `q_<j>`; everything is
//! laid out left to right in the order it acts on a state.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::Error;
use crate::linalg::C64;
use crate::qcpu::compose::{ComposedNetwork, ScalableNetwork, TraceStep};
use crate::qcpu::network::QcpuNetwork;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Text,
    Dot,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "text" => Ok(Self::Text),
            "dot" => Ok(Self::Dot),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum NetworkView<'a> {
    Factors(&'a QcpuNetwork),
    Composed(&'a ComposedNetwork),
    Scalable(&'a ScalableNetwork),
}

impl<'a> From<&'a QcpuNetwork> for NetworkView<'a> {
    fn from(n: &'a QcpuNetwork) -> Self {
        NetworkView::Factors(n)
    }
}

impl<'a> From<&'a ComposedNetwork> for NetworkView<'a> {
    fn from(n: &'a ComposedNetwork) -> Self {
        NetworkView::Composed(n)
    }
}

impl<'a> From<&'a ScalableNetwork> for NetworkView<'a> {
    fn from(n: &'a ScalableNetwork) -> Self {
        NetworkView::Scalable(n)
    }
}

pub fn export_network<'a>(network: impl Into<NetworkView<'a>>, format: ExportFormat) -> String {
    let view = network.into();
    match format {
        ExportFormat::Text => render_text(view),
        ExportFormat::Dot => render_dot(view),
    }
}

fn fmt_coeff(c: C64) -> String {
    // Avoid printing "-0.000000".
    let clean = |x: f64| if x.abs() < 5e-7 { 0.0 } else { x };
    format!("{:.6}{:+.6}i", clean(c.re), clean(c.im))
}

/// A node in application order.
enum Node {
    Factor { m: usize, n: usize, coeff: C64 },
    Connector { id: usize, label: String },
    Block { index: usize, label: String },
}

impl Node {
    fn id(&self) -> String {
        match self {
            Node::Factor { m, n, .. } => format!("f_{m}_{n}"),
            Node::Connector { id, .. } => format!("conn_{id}"),
            Node::Block { index, .. } => format!("q_{index}"),
        }
    }

    fn label(&self) -> String {
        match self {
            Node::Factor { m, n, coeff } => format!("({m}, {n}, {})", fmt_coeff(*coeff)),
            Node::Connector { label, .. } => label.clone(),
            Node::Block { label, .. } => format!("Q({label})"),
        }
    }
}

fn chain_nodes(trace: &[TraceStep]) -> Vec<Node> {
    let mut next_conn = 0;
    trace
        .iter()
        .rev()
        .map(|step| match step {
            TraceStep::Block { index, label } => Node::Block {
                index: *index,
                label: label.clone(),
            },
            other => {
                let id = next_conn;
                next_conn += 1;
                Node::Connector {
                    id,
                    label: other.to_string(),
                }
            }
        })
        .collect()
}

fn header_and_nodes(view: NetworkView<'_>) -> (String, String, Vec<Node>) {
    match view {
        NetworkView::Factors(n) => (
            format!(
                "network Q({}) register_dim={} factors={}",
                n.label,
                n.shape().dim(),
                n.factors().len()
            ),
            format!("Q({})", n.label),
            n.factors()
                .iter()
                .map(|f| Node::Factor {
                    m: f.m,
                    n: f.n,
                    coeff: f.coeff,
                })
                .collect(),
        ),
        NetworkView::Composed(c) => (
            format!(
                "composed register_dim={} blocks={}",
                c.register_dim(),
                c.block_count()
            ),
            "composed".to_string(),
            chain_nodes(&c.trace),
        ),
        NetworkView::Scalable(s) => (
            format!(
                "scalable input_dim={} out_register_dim={} blocks={}",
                s.input_dim,
                s.out_operator.rows() / 2,
                s.block_count()
            ),
            "scalable".to_string(),
            chain_nodes(&s.trace),
        ),
    }
}

fn render_text(view: NetworkView<'_>) -> String {
    let (header, _, nodes) = header_and_nodes(view);
    let mut out = header;
    out.push('\n');
    for node in &nodes {
        let kind = match node {
            Node::Factor { .. } => "factor",
            Node::Connector { .. } => "connector",
            Node::Block { .. } => "block",
        };
        let _ = writeln!(out, "{kind} {} {}", node.id(), node.label());
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn render_dot(view: NetworkView<'_>) -> String {
    let (_, name, nodes) = header_and_nodes(view);
    let mut out = format!("digraph \"{}\" {{\n  rankdir=LR;\n", escape(&name));
    out.push_str("  in [shape=point];\n  out [shape=point];\n");
    for node in &nodes {
        let shape = match node {
            Node::Factor { .. } => "box",
            Node::Connector { .. } => "circle",
            Node::Block { .. } => "box3d",
        };
        let _ = writeln!(
            out,
            "  {} [label=\"{}\", shape={shape}];",
            node.id(),
            escape(&node.label())
        );
    }
    let ids: Vec<String> = std::iter::once("in".to_string())
        .chain(nodes.iter().map(Node::id))
        .chain(std::iter::once("out".to_string()))
        .collect();
    for pair in ids.windows(2) {
        let _ = writeln!(out, "  {} -> {};", pair[0], pair[1]);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hadamard, pauli_x};
    use crate::qcpu::compose::product_compose;
    use crate::qcpu::network::qcpu_of;

    #[test]
    fn text_export_lists_factors() {
        let net = qcpu_of(&pauli_x()).unwrap();
        let text = export_network(&net, ExportFormat::Text);
        assert_eq!(text.lines().filter(|l| l.starts_with("factor ")).count(), 2);
        assert!(text.contains("factor f_0_1 (0, 1, 1.000000+0.000000i)"));
    }

    #[test]
    fn dot_export_is_deterministic_digraph() {
        let net = qcpu_of(&hadamard()).unwrap();
        let a = export_network(&net, ExportFormat::Dot);
        assert_eq!(a, export_network(&net, ExportFormat::Dot));
        assert!(a.starts_with("digraph "));
        assert!(a.trim_end().ends_with('}'));
        assert_eq!(a.matches('{').count(), a.matches('}').count());
        assert!(a.contains("f_1_1 [label=\"(1, 1, -0.707107+0.000000i)\""));
        assert!(a.contains("in -> f_0_0;"));
    }

    #[test]
    fn composed_export_counts() {
        let composed = product_compose(&[pauli_x(), hadamard()]).unwrap();
        let text = export_network(&composed, ExportFormat::Text);
        assert_eq!(text.lines().filter(|l| l.starts_with("block ")).count(), 2);
        assert_eq!(
            text.lines().filter(|l| l.starts_with("connector ")).count(),
            4
        );
        // Application order: the prepared-state projector first, C† last.
        let labels: Vec<&str> = text
            .lines()
            .skip(1)
            .map(|l| l.rsplit(' ').next().unwrap())
            .collect();
        assert_eq!(labels, ["CC†", "Q(U2)", "C", "Q(U1)", "C", "C†"]);
        let dot = export_network(&composed, ExportFormat::Dot);
        assert!(dot.contains("conn_0 [label=\"CC†\""));
        assert!(dot.contains("conn_3 [label=\"C†\""));
    }

    #[test]
    fn unknown_format() {
        assert!(matches!(
            "svg".parse::<ExportFormat>(),
            Err(Error::UnknownFormat(_))
        ));
        assert_eq!("dot".parse::<ExportFormat>().unwrap(), ExportFormat::Dot);
    }
}
