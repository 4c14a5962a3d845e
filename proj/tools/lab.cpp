#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "oblab/bits.hpp"
#include "oblab/circuit.hpp"
#include "oblab/encoding.hpp"
#include "oblab/errors.hpp"
#include "oblab/experiments.hpp"
#include "oblab/family.hpp"
#include "oblab/obfuscation.hpp"
#include "oblab/pprf.hpp"
#include "oblab/report.hpp"
#include "oblab/we.hpp"

namespace {

using namespace oblab;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<uint8_t> read_file_bytes(const std::string& path) {
    const std::string s = read_file(path);
    return std::vector<uint8_t>(s.begin(), s.end());
}

void write_file_bytes(const std::string& path, const std::vector<uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write to '" + path + "' failed");
}

GgmKey load_key(const std::string& key_hex, const std::string& key_file) {
    if (!key_file.empty()) return parse_key(read_file_bytes(key_file));
    return parse_key(from_hex(key_hex));
}

int cmd_run(const std::string& config_path, const std::string& out_path,
            const std::string& seed_override) {
    ExperimentConfig config;
    try {
        config = ExperimentConfig::from_json(nlohmann::json::parse(read_file(config_path)));
        if (!seed_override.empty()) {
            config.rng_seed_hex = seed_override;
            config.validate();
        }
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    const ExperimentReport report = run_experiment(config);
    for (const CheckResult& c : report.checks) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  observed=" << c.observed
                  << " bound=" << c.bound;
        if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
        std::cout << "\n";
    }
    std::cout << (report.pass() ? "PASS" : "FAIL") << " " << config.experiment << " in "
              << report.timing_ms << " ms\n";
    if (!out_path.empty()) emit_report(report, out_path);
    if (!report.pass()) return report.has_budget_failure() ? 3 : 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"batch front end for the obfuscation laboratory"};
    app.require_subcommand(1);

    // ---- run ----
    std::string config_path, out_path, seed_override;
    CLI::App* run = app.add_subcommand("run", "run a configured experiment and emit a report");
    run->add_option("--config", config_path, "JSON experiment config")->required();
    run->add_option("--out", out_path, "path for the canonical JSON report");
    run->add_option("--seed", seed_override, "hex master seed override");

    // ---- pprf ----
    CLI::App* pprf = app.add_subcommand("pprf", "puncturable PRF utilities");
    pprf->require_subcommand(1);
    std::string pprf_seed = "00";
    uint16_t domain_bits = 16;
    uint8_t out_bits = 1;
    std::string key_out, key_hex, key_file, point_str, pk_out;

    CLI::App* keygen_cmd = pprf->add_subcommand("keygen", "derive a key from a seed");
    keygen_cmd->add_option("--seed", pprf_seed, "hex rng seed")->required();
    keygen_cmd->add_option("--domain-bits", domain_bits, "input width in bits")->required();
    keygen_cmd->add_option("--out-bits", out_bits, "output width in bits");
    keygen_cmd->add_option("--out", key_out, "write the serialized key here");

    CLI::App* eval_cmd = pprf->add_subcommand("eval", "evaluate at a point");
    eval_cmd->add_option("--key", key_hex, "serialized key, hex");
    eval_cmd->add_option("--key-file", key_file, "serialized key file");
    eval_cmd->add_option("--point", point_str, "point as a 0/1 string")->required();

    CLI::App* puncture_cmd = pprf->add_subcommand("puncture", "puncture at a point");
    puncture_cmd->add_option("--key", key_hex, "serialized key, hex");
    puncture_cmd->add_option("--key-file", key_file, "serialized key file");
    puncture_cmd->add_option("--point", point_str, "point as a 0/1 string")->required();
    puncture_cmd->add_option("--out", pk_out, "write the punctured key here");

    // ---- io ----
    CLI::App* io = app.add_subcommand("io", "canonical obfuscation");
    io->require_subcommand(1);
    std::string dsl_path, io_out;
    CLI::App* obf_cmd = io->add_subcommand("obfuscate", "canonicalize a circuit DSL file");
    obf_cmd->add_option("circuit", dsl_path, "circuit DSL file")->required();
    obf_cmd->add_option("--out", io_out, "write canonical bytes here");

    // ---- we ----
    CLI::App* we = app.add_subcommand("we", "witness encryption for the compressibility language");
    we->require_subcommand(1);
    std::string profile = "tiny", statement_str, ct_path, witness_str, we_out;
    uint8_t plain_bit = 0;

    CLI::App* enc_cmd = we->add_subcommand("enc", "encrypt a bit to a statement");
    enc_cmd->add_option("--profile", profile, "family profile (tiny|default)");
    enc_cmd->add_option("--statement", statement_str, "t*ell' bits as a 0/1 string")->required();
    enc_cmd->add_option("--bit", plain_bit, "plaintext bit")->required();
    enc_cmd->add_option("--out", we_out, "ciphertext file")->required();

    CLI::App* dec_cmd = we->add_subcommand("dec", "decrypt with a witness");
    dec_cmd->add_option("--ct", ct_path, "ciphertext file")->required();
    dec_cmd->add_option("--witness", witness_str, "m-bit witness as a 0/1 string")->required();

    CLI::App* member_cmd = we->add_subcommand("member", "decide language membership");
    member_cmd->add_option("--profile", profile, "family profile (tiny|default)");
    member_cmd->add_option("--statement", statement_str, "t*ell' bits as a 0/1 string")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, out_path, seed_override);

        if (keygen_cmd->parsed()) {
            const GgmKey k = keygen(from_hex(pprf_seed), domain_bits, out_bits);
            const auto bytes = serialize_key(k);
            if (!key_out.empty()) write_file_bytes(key_out, bytes);
            std::cout << to_hex(bytes) << "\n";
            return 0;
        }
        if (eval_cmd->parsed()) {
            const GgmKey k = load_key(key_hex, key_file);
            std::cout << prf_eval(k, BitVec::from_string(point_str)).to_string() << "\n";
            return 0;
        }
        if (puncture_cmd->parsed()) {
            const GgmKey k = load_key(key_hex, key_file);
            const PuncturedKey pk = puncture(k, BitVec::from_string(point_str));
            const auto bytes = serialize_punctured_key(pk);
            if (!pk_out.empty()) write_file_bytes(pk_out, bytes);
            std::cout << to_hex(bytes) << "\n";
            return 0;
        }
        if (obf_cmd->parsed()) {
            const Circuit c = parse_circuit(read_file(dsl_path));
            const CanonicalCircuit cc = io_obfuscate(c);
            const auto bytes = cc.canonical_bytes();
            if (!io_out.empty()) write_file_bytes(io_out, bytes);
            std::cout << to_hex(bytes) << "\n";
            return 0;
        }
        if (enc_cmd->parsed()) {
            const Family family(profile_by_name(profile));
            const Statement x{BitVec::from_string(statement_str)};
            const Ciphertext ct = we_encrypt(x, plain_bit & 1u, family);
            write_file_bytes(we_out, ciphertext_to_bytes(ct, x));
            std::cout << "wrote " << we_out << "\n";
            return 0;
        }
        if (dec_cmd->parsed()) {
            const auto [ct, stmt] = ciphertext_from_bytes(read_file_bytes(ct_path));
            const EncodedCircuit witness{BitVec::from_string(witness_str)};
            std::cout << static_cast<int>(we_decrypt(ct, witness)) << "\n";
            return 0;
        }
        if (member_cmd->parsed()) {
            const Family family(profile_by_name(profile));
            const Membership m = language_membership(Statement{BitVec::from_string(statement_str)}, family);
            if (m.member) {
                std::cout << "member witness=" << m.witness->bits.to_string() << "\n";
            } else {
                std::cout << "non-member\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
