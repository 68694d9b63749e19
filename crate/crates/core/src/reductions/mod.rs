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

//! Hardness-reduction gadgets: label cover to token swapping, and set cover
//! to 0/1-weighted token swapping.

pub mod label_cover;
pub mod set_cover;

pub use label_cover::{
    amplify_degree, build_from_label_cover, classify_detour_tokens, completeness_sequence,
    completeness_sequence_with_pairing, satisfied_fraction, validate_label_cover, DetourReport,
    GadgetId, GadgetMap, LabelCoverEdge, LabelCoverInstance, Labelling, Region, Side,
    Stage2Pairing, TokenClass, VertexRole,
};
pub use set_cover::{
    build_from_set_cover, cover_sequence, prune_cover, set_cover_bruteforce, set_cover_optimal,
    SetCoverInstance, SetCoverRole, SetCoverRoles,
};
