#include "blockising/batch_io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "blockising/errors.hpp"

namespace blockising {

namespace {

constexpr std::array<char, 4> kMagic = {'B', 'I', 'S', '1'};
constexpr std::uint32_t kFormatVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char buf[4];
    in.read(reinterpret_cast<char*>(buf), 4);
    if (!in) throw MalformedInputError("binary batch: truncated header");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[i]) << (8 * i);
    return v;
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    if (!in) throw MalformedInputError("binary batch: truncated header");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

}  // namespace

void write_batch_csv(std::ostream& out, const SampleBatch& batch) {
    out << "# seed " << batch.seed_record.master_seed << ' '
        << batch.seed_record.stream_index << '\n';
    for (int j = 0; j < batch.n_sites; ++j) {
        out << (j ? ",site_" : "site_") << j;
    }
    out << '\n';
    for (int i = 0; i < batch.n_samples; ++i) {
        const auto row = batch.row(i);
        for (int j = 0; j < batch.n_sites; ++j) {
            if (j) out << ',';
            out << (row[j] > 0 ? "1" : "-1");
        }
        out << '\n';
    }
}

SampleBatch read_batch_csv(std::istream& in) {
    SampleBatch batch;
    std::string line;

    if (!std::getline(in, line)) throw MalformedInputError("csv batch: empty input");
    if (line.rfind("# seed ", 0) == 0) {
        std::istringstream seed_line(line.substr(7));
        if (!(seed_line >> batch.seed_record.master_seed >>
              batch.seed_record.stream_index)) {
            throw MalformedInputError("csv batch: unparsable seed comment");
        }
        if (!std::getline(in, line)) {
            throw MalformedInputError("csv batch: missing header line");
        }
    }

    // Header: count columns.
    if (line.rfind("site_", 0) != 0) {
        throw MalformedInputError("csv batch: expected site_* header");
    }
    int n_sites = 1;
    for (char c : line) n_sites += (c == ',');
    batch.n_sites = n_sites;

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row_in(line);
        std::string cell;
        int col = 0;
        while (std::getline(row_in, cell, ',')) {
            if (col >= n_sites) {
                throw MalformedInputError("csv batch: row wider than header");
            }
            if (cell == "1" || cell == "+1") {
                batch.spins.push_back(+1);
            } else if (cell == "-1") {
                batch.spins.push_back(-1);
            } else {
                throw MalformedInputError("csv batch: entry '" + cell +
                                          "' is not a spin");
            }
            ++col;
        }
        if (col != n_sites) {
            throw MalformedInputError("csv batch: row narrower than header");
        }
        ++batch.n_samples;
    }
    return batch;
}

void write_batch_binary(std::ostream& out, const SampleBatch& batch) {
    out.write(kMagic.data(), kMagic.size());
    put_u32(out, kFormatVersion);
    put_u32(out, static_cast<std::uint32_t>(batch.n_sites));
    put_u64(out, static_cast<std::uint64_t>(batch.n_samples));
    put_u64(out, batch.seed_record.master_seed);
    put_u64(out, batch.seed_record.stream_index);

    const int row_bytes = (batch.n_sites + 7) / 8;
    std::vector<char> packed(static_cast<std::size_t>(row_bytes));
    for (int i = 0; i < batch.n_samples; ++i) {
        std::fill(packed.begin(), packed.end(), 0);
        const auto row = batch.row(i);
        for (int j = 0; j < batch.n_sites; ++j) {
            if (row[j] > 0) packed[j / 8] |= static_cast<char>(1 << (j % 8));
        }
        out.write(packed.data(), row_bytes);
    }
}

SampleBatch read_batch_binary(std::istream& in) {
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) {
        throw MalformedInputError("binary batch: bad magic");
    }
    const std::uint32_t version = get_u32(in);
    if (version != kFormatVersion) {
        throw MalformedInputError("binary batch: unsupported format version " +
                                  std::to_string(version));
    }

    SampleBatch batch;
    const std::uint32_t n_sites = get_u32(in);
    const std::uint64_t n_samples = get_u64(in);
    batch.seed_record.master_seed = get_u64(in);
    batch.seed_record.stream_index = get_u64(in);
    if (n_sites == 0 || n_sites > (1u << 24) || n_samples > (1ull << 40)) {
        throw MalformedInputError("binary batch: implausible dimensions");
    }
    batch.n_sites = static_cast<int>(n_sites);
    batch.n_samples = static_cast<int>(n_samples);
    batch.spins.assign(static_cast<std::size_t>(n_samples) * n_sites, -1);

    const int row_bytes = (batch.n_sites + 7) / 8;
    std::vector<unsigned char> packed(static_cast<std::size_t>(row_bytes));
    for (int i = 0; i < batch.n_samples; ++i) {
        in.read(reinterpret_cast<char*>(packed.data()), row_bytes);
        if (!in) throw MalformedInputError("binary batch: truncated payload");
        std::int8_t* row =
            batch.spins.data() + static_cast<std::size_t>(i) * batch.n_sites;
        for (int j = 0; j < batch.n_sites; ++j) {
            if (packed[j / 8] & (1 << (j % 8))) row[j] = +1;
        }
    }
    return batch;
}

void save_batch(const std::string& path, const SampleBatch& batch, bool binary) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw ResourceError("cannot open for writing: " + path);
    if (binary) {
        write_batch_binary(out, batch);
    } else {
        write_batch_csv(out, batch);
    }
    out.flush();
    if (!out) throw ResourceError("write failed: " + path);
}

SampleBatch load_batch(const std::string& path, bool binary) {
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) throw MalformedInputError("cannot open for reading: " + path);
    return binary ? read_batch_binary(in) : read_batch_csv(in);
}

}  // namespace blockising
