#include "brc/serialize.hpp"

#include <json.hpp>

#include "brc/constrained.hpp"
#include "brc/gf.hpp"

namespace brc::io {

using nlohmann::json;

namespace {

void put(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
    for (int i = bytes - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get(std::span<const std::uint8_t> in, std::size_t& pos, int bytes) {
    if (pos + static_cast<std::size_t>(bytes) > in.size()) throw FormatError("truncated container header");
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v = (v << 8) | in[pos++];
    return v;
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
}

template <class T>
T field(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw FormatError(std::string("missing or invalid field \"") + key + "\"");
    }
}

}  // namespace

std::vector<std::uint8_t> write_container(const Container& c) {
    const BrcParams& p = c.params;
    if (c.codeword.size() != p.n) throw FormatError("codeword length does not match parameters");
    std::vector<std::uint8_t> out{'B', 'R', 'C', 'W'};
    put(out, kContainerVersion, 1);
    put(out, constrained::kCoderVersion, 1);
    put(out, gf::kModulusTableVersion, 1);
    put(out, p.alpha, 2);
    put(out, p.l, 2);
    put(out, p.m, 1);
    put(out, c.pad, 2);
    put(out, c.codeword.size(), 4);
    const auto packed = pack_bits(c.codeword);
    out.insert(out.end(), packed.begin(), packed.end());
    return out;
}

Container read_container(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4 || bytes[0] != 'B' || bytes[1] != 'R' || bytes[2] != 'C' || bytes[3] != 'W') {
        throw FormatError("not a codeword container (bad magic)");
    }
    std::size_t pos = 4;
    if (get(bytes, pos, 1) != kContainerVersion) throw FormatError("unsupported container version");
    if (get(bytes, pos, 1) != constrained::kCoderVersion) throw FormatError("unsupported constrained coder version");
    if (get(bytes, pos, 1) != gf::kModulusTableVersion) throw FormatError("unsupported modulus table version");
    const auto alpha = static_cast<unsigned>(get(bytes, pos, 2));
    const auto l = static_cast<unsigned>(get(bytes, pos, 2));
    const auto m = static_cast<unsigned>(get(bytes, pos, 1));
    Container c;
    c.pad = static_cast<std::size_t>(get(bytes, pos, 2));
    const auto nbits = static_cast<std::size_t>(get(bytes, pos, 4));
    c.params = derive_params(alpha, l, m);
    if (nbits != c.params.n) throw FormatError("payload length does not match parameters");
    if (c.pad > c.params.k) throw FormatError("padding exceeds k");
    if (bytes.size() - pos != (nbits + 7) / 8) throw FormatError("payload size mismatch");
    c.codeword = unpack_bits(bytes.subspan(pos), nbits);
    return c;
}

std::string fragments_to_json(const FragmentSet& set) {
    json j;
    j["version"] = 1;
    if (set.params) {
        j["alpha"] = set.params->alpha;
        j["l"] = set.params->l;
        j["m"] = set.params->m;
    }
    j["fragments"] = json::array();
    for (const auto& f : set.fragments) {
        json e;
        e["bits"] = f.bits.to_string();
        if (f.provenance) e["provenance"] = {{"start", f.provenance->first}, {"end", f.provenance->second}};
        j["fragments"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

FragmentSet fragments_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.is_object()) throw FormatError("fragments file must hold a JSON object");
    if (j.contains("version") && field<int>(j, "version") != 1) throw FormatError("unsupported fragments version");
    FragmentSet set;
    if (j.contains("alpha") || j.contains("l") || j.contains("m")) {
        set.params = derive_params(field<unsigned>(j, "alpha"), field<unsigned>(j, "l"), field<unsigned>(j, "m"));
    }
    const json& arr = j.contains("fragments") ? j.at("fragments") : json::array();
    if (!arr.is_array()) throw FormatError("\"fragments\" must be an array");
    for (const auto& e : arr) {
        Fragment f;
        try {
            f.bits = BitString::parse(field<std::string>(e, "bits"));
        } catch (const std::invalid_argument& ex) {
            throw FormatError(std::string("fragment bits: ") + ex.what());
        }
        if (e.contains("provenance")) {
            const json& pr = e.at("provenance");
            f.provenance = std::make_pair(field<std::size_t>(pr, "start"), field<std::size_t>(pr, "end"));
        }
        set.fragments.push_back(std::move(f));
    }
    return set;
}

std::string plan_to_json(const channel::BreakPlan& plan) {
    json j;
    j["n"] = plan.n;
    j["cuts"] = plan.cuts;
    j["overlap"] = plan.overlap;
    j["hidden"] = plan.hidden;
    j["seed"] = plan.seed;
    return j.dump(2) + "\n";
}

channel::BreakPlan plan_from_json(const std::string& text) {
    const json j = parse(text);
    channel::BreakPlan plan;
    plan.n = field<std::size_t>(j, "n");
    plan.cuts = j.contains("cuts") ? field<std::vector<std::size_t>>(j, "cuts") : std::vector<std::size_t>{};
    plan.overlap = j.contains("overlap") ? field<std::size_t>(j, "overlap") : 0;
    plan.hidden = j.contains("hidden") ? field<std::vector<std::size_t>>(j, "hidden") : std::vector<std::size_t>{};
    plan.seed = j.contains("seed") ? field<std::uint64_t>(j, "seed") : 0;
    return plan;
}

fragsim::ExperimentConfig sim_config_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.is_object()) throw FormatError("config must be a JSON object");
    fragsim::ExperimentConfig c;
    auto list_u = [&](const char* key, std::vector<unsigned>& dst) {
        if (!j.contains(key)) return;
        dst = j.at(key).is_array() ? field<std::vector<unsigned>>(j, key) : std::vector<unsigned>{field<unsigned>(j, key)};
    };
    list_u("alpha", c.alphas);
    list_u("beta", c.betas);
    if (j.contains("rho")) {
        c.rhos = j.at("rho").is_array() ? field<std::vector<double>>(j, "rho") : std::vector<double>{field<double>(j, "rho")};
    }
    if (j.contains("k")) c.base.k = field<std::size_t>(j, "k");
    if (j.contains("trials")) c.base.trials = field<std::size_t>(j, "trials");
    if (j.contains("width_mm")) c.base.width_mm = field<double>(j, "width_mm");
    if (j.contains("depth_mm")) c.base.depth_mm = field<double>(j, "depth_mm");
    if (j.contains("pitch_mm")) c.base.pitch_mm = field<double>(j, "pitch_mm");
    if (j.contains("grid")) c.base.grid = field<unsigned>(j, "grid");
    if (j.contains("seed")) c.base.seed = field<std::uint64_t>(j, "seed");
    if (j.contains("threads")) c.threads = field<unsigned>(j, "threads");
    return c;
}

std::string sim_config_to_json(const fragsim::ExperimentConfig& c) {
    json j;
    j["alpha"] = c.alphas;
    j["beta"] = c.betas;
    j["rho"] = c.rhos;
    j["k"] = c.base.k;
    j["trials"] = c.base.trials;
    j["width_mm"] = c.base.width_mm;
    j["depth_mm"] = c.base.depth_mm;
    j["pitch_mm"] = c.base.pitch_mm;
    j["grid"] = c.base.grid;
    j["seed"] = c.base.seed;
    j["threads"] = c.threads;
    return j.dump(2) + "\n";
}

}  // namespace brc::io
