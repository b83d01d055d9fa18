use g31x_core::structure::alpha_exact_with_cap;
use g31x_core::GraphParams;
use serde::Serialize;

use crate::args::{Format, InfoArgs};
use crate::output::emit;
use crate::Failure;

#[derive(Serialize)]
struct Info {
    n: usize,
    vertices: usize,
    degree: u64,
    edges: u64,
    alpha: Option<usize>,
}

pub fn run(a: &InfoArgs) -> Result<(), Failure> {
    let params = GraphParams::new(a.n)?;
    let alpha = alpha_exact_with_cap(params, a.cap_exact).ok();
    let info = Info {
        n: a.n,
        vertices: params.vertex_count(),
        degree: params.degree(),
        edges: params.total_edges(),
        alpha,
    };
    let text = match a.format {
        Format::Json => serde_json::to_string_pretty(&info).expect("serializable") + "\n",
        Format::Csv => {
            let alpha = alpha.map_or("NA".to_string(), |x| x.to_string());
            format!(
                "n,V,d,E,alpha\n{},{},{},{},{}\n",
                info.n, info.vertices, info.degree, info.edges, alpha
            )
        }
        Format::Text => {
            let alpha = alpha.map_or("NA".to_string(), |x| x.to_string());
            format!(
                "n={}\nV={}\nd={}\nE={}\nalpha={}\n",
                info.n, info.vertices, info.degree, info.edges, alpha
            )
        }
    };
    emit(a.output.out.as_deref(), text.as_bytes())
}
