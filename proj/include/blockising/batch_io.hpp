#pragma once

#include <iosfwd>
#include <string>

#include "blockising/sampler.hpp"

namespace blockising {

// CSV layout: one header line "site_0,site_1,...,site_{N-1}", then one line
// per observation with entries +1 or -1.  The seed lineage is carried in a
// leading comment line "# seed <master> <stream>" so the round-trip is exact.
void write_batch_csv(std::ostream& out, const SampleBatch& batch);
SampleBatch read_batch_csv(std::istream& in);

// Binary layout (all integers little-endian):
//   bytes 0..3   magic "BIS1"
//   u32          format version (1)
//   u32          N (sites)
//   u64          n (observations)
//   u64          master_seed
//   u64          stream_index
//   payload      n rows, each ceil(N/8) bytes; bit j of byte j/8 is 1 iff
//                sigma_j = +1 (within each byte, bit 0 = lowest site index)
void write_batch_binary(std::ostream& out, const SampleBatch& batch);
SampleBatch read_batch_binary(std::istream& in);

// File-path conveniences; format chosen by the caller.  Throw
// MalformedInputError on unreadable/invalid content and ResourceError if the
// file cannot be opened for writing.
void save_batch(const std::string& path, const SampleBatch& batch, bool binary);
SampleBatch load_batch(const std::string& path, bool binary);

}  // namespace blockising
