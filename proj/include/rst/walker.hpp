#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rst/arborescence.hpp"
#include "rst/decomposition.hpp"
#include "rst/graph.hpp"
#include "rst/rng.hpp"
#include "rst/transition_table.hpp"

namespace rst {

enum class WalkMode {
  Plain,           // the walk X, every step simulated
  EdgeShortcut,    // blocks in covered components replaced by entry + exit edge
  VertexShortcut,  // blocks in covered components replaced by entry + first outside vertex
};

struct WalkOptions {
  WalkMode mode = WalkMode::Plain;
  /// Steps after which shortcuts stop and the walk continues verbatim;
  /// 0 means m * n.
  std::uint64_t fallback_threshold = 0;
  /// Keep the full transcript (for tests and debugging).
  bool record_transcript = false;
};

struct StepStats {
  std::uint64_t verbatim_steps = 0;
  std::uint64_t shortcut_jumps = 0;
  /// Verbatim traversals of cut edges.
  std::uint64_t cut_traversals = 0;
  /// Vertices first reached by a vertex-mode jump.
  std::uint64_t gap_count = 0;
  bool fallback = false;

  std::uint64_t transcript_length() const noexcept { return verbatim_steps + shortcut_jumps; }
};

struct TranscriptEntry {
  Vertex vertex;
  /// Reached by a shortcut jump rather than a graph edge.
  bool jump;
};

struct WalkResult {
  PartialForest forest;
  StepStats stats;
  /// Includes the start vertex; empty unless requested.
  std::vector<TranscriptEntry> transcript;
};

/// Walks from a stationary start until every vertex is visited, recording the
/// first-entry arc of each vertex.
///
/// A block inside component D_i is shortcut only when D_i is fully visited at
/// the moment the walk enters it from outside; the block in which coverage
/// completes runs verbatim to its exit. In edge mode the exit (u, u') is drawn
/// from the table and u' gets arc (u, u') if new. In vertex mode the exit
/// vertex u is drawn and, if new, becomes a gap. After the fallback threshold
/// every step is simulated verbatim.
///
/// Throws TableError when a shortcut needs a row the table lacks, and
/// std::invalid_argument when the table mode does not match the walk mode.
WalkResult simulate_shortcut(const Graph& g, const Decomposition& d, const TransitionTable* tables,
                             const WalkOptions& options, Rng& rng);

/// Aldous-Broder: first-entry arcs of a covering walk from a stationary start.
/// Consumes the generator exactly like simulate_shortcut in plain mode.
Arborescence aldous_broder(const Graph& g, Rng& rng, StepStats* stats = nullptr);

/// Wilson's loop-erased random walk algorithm, rooted at root.
Arborescence wilson(const Graph& g, Vertex root, Rng& rng);

}  // namespace rst
