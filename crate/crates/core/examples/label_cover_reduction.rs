// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Reduce a fully satisfiable label-cover instance to token swapping and
//! replay the sequence derived from the satisfying labelling.

use std::collections::BTreeMap;

use tokswap::model::{region_swap_counts, validate};
use tokswap::reductions::{
    build_from_label_cover, classify_detour_tokens, completeness_sequence, LabelCoverInstance, Labelling,
};

fn main() -> tokswap::Result<()> {
    // K_{2,2} with the identity constraint over a two-letter alphabet.
    let phi = LabelCoverInstance::complete_bipartite(2, 2, vec![0, 1]);
    let labelling = Labelling::constant(&phi, 1);
    let (instance, map) = build_from_label_cover(&phi)?;
    println!(
        "reduced instance: {} vertices, {} edges, {} assignment tokens",
        instance.vertex_count(),
        instance.graph().edge_count(),
        map.assignment_token_count()
    );

    let seq = completeness_sequence(&phi, &labelling, &instance, &map)?;
    let report = validate(&instance, &seq)?;
    println!("sequence length {}, reaches target: {}", report.length, report.reaches_target);

    let counts: BTreeMap<_, _> = region_swap_counts(&instance, &seq, &map.edge_regions)?;
    for (region, n) in counts {
        println!("  {region:?}: {n} swaps");
    }
    let detours = classify_detour_tokens(&instance, &map, &seq)?;
    println!("detour tokens: {}", detours.detour_count());
    Ok(())
}
