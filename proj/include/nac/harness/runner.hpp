#ifndef NAC_HARNESS_RUNNER_HPP
#define NAC_HARNESS_RUNNER_HPP

#include "nac/abe/abe_access_manager.hpp"
#include "nac/abe/abe_decryptor.hpp"
#include "nac/abe/abe_encryptor.hpp"
#include "nac/abe/attribute_authority.hpp"
#include "nac/entities/access_manager.hpp"
#include "nac/entities/decryptor.hpp"
#include "nac/entities/encryptor.hpp"
#include "nac/harness/scenario.hpp"

#include <memory>

namespace nac::harness {

/// Packet categories used in reports, in table order.
enum class PacketType { Content, Ck, Kek, Kdk, AttributeKey, AttributeDecline, Notify, Other };

std::string_view
toString(PacketType t);

/// Category of a Data packet by name and content.
PacketType
classifyData(const DataPacket& data);

struct PacketTypeStats
{
  uint64_t count = 0;
  uint64_t totalBytes = 0;
  uint64_t minBytes = 0;
  uint64_t maxBytes = 0;
  /// First packet of this type, for size tables.
  Name exampleName;
  uint64_t exampleBytes = 0;
};

struct OutcomeRecord
{
  size_t index = 0; // position in the script
  ActionKind action = ActionKind::Produce;
  std::string entity;
  Name name;
  std::string label;
  Millis startedAt{0};
  Millis finishedAt{0};
  /// "ok", an ErrorCode name, or "Exception".
  std::string status;
  std::string sha256; // plaintext hash (produce, consume) when ok
  std::string detail;
  uint64_t packets = 0; // produce and poll_notify: Data published

  bool
  ok() const
  {
    return status == "ok";
  }
};

struct ScenarioReport
{
  Scheme scheme = Scheme::Nac;
  uint64_t seed = 0;
  std::map<PacketType, PacketTypeStats> packets;
  std::map<sim::LinkId, sim::LinkStats> links;
  std::map<sim::NodeId, sim::NodeStats> nodes;
  std::map<std::string, CryptoOpCounter> crypto;
  std::map<std::string, uint64_t> interests; // per entity, Interests expressed
  std::map<std::string, uint64_t> counters;  // scheme-level counts, see docs/payloads.md
  std::vector<OutcomeRecord> outcomes;
  uint64_t traceEvents = 0;
  std::string traceDigest;
  Millis endTime{0};

  /// Outcomes of one action kind, in script order.
  std::vector<const OutcomeRecord*>
  outcomesOf(ActionKind kind) const;
};

/**
 * Builds the network and entities of a scenario. Entities exist from
 * construction on (policies defined, pre-provisioned keys installed);
 * run() executes the script and drains the event queue.
 */
class ScenarioRunner
{
public:
  explicit
  ScenarioRunner(ScenarioConfig cfg);

  ~ScenarioRunner();

  ScenarioRunner(const ScenarioRunner&) = delete;
  ScenarioRunner& operator=(const ScenarioRunner&) = delete;

  ScenarioReport
  run();

  /// Report of the current state without running anything.
  ScenarioReport
  report() const;

  const ScenarioConfig&
  config() const noexcept
  {
    return m_cfg;
  }

  sim::Network&
  network() noexcept
  {
    return *m_net;
  }

  Entity&
  entity(const std::string& id) const;

  DecryptorBase&
  decryptor(const std::string& id) const;

  EncryptorBase&
  encryptor(const std::string& id) const;

  /// Nullptr unless the scheme matches.
  AccessManager*
  nacManager(const std::string& id) const;

  AbeAccessManager*
  abeManager(const std::string& id) const;

  AttributeAuthority*
  authority(const std::string& id) const;

  /// Plaintext a produce action publishes for `suffix`.
  Bytes
  plaintextFor(const ScriptAction& action) const;

  /// Names of every key Data published (KEK, KDK, CK, attribute keys).
  std::vector<Name>
  publishedKeyNames() const;

  /// Start an action now; its outcome is appended when it completes.
  void
  execute(size_t index, const ScriptAction& action);

  const std::vector<OutcomeRecord>&
  outcomes() const noexcept
  {
    return m_outcomes;
  }

private:
  void
  build();

  void
  record(OutcomeRecord rec);

private:
  ScenarioConfig m_cfg;
  std::unique_ptr<sim::Network> m_net;
  TrustStore m_trust;
  std::map<std::string, std::unique_ptr<Entity>> m_entities;
  std::vector<std::string> m_order; // construction order
  std::vector<OutcomeRecord> m_outcomes;
};

/// Convenience: ScenarioRunner(cfg).run().
ScenarioReport
runScenario(const ScenarioConfig& cfg);

nlohmann::json
toJson(const ScenarioReport& report);

/// Human-readable summary.
std::string
formatReport(const ScenarioReport& report);

struct PacketSizeRow
{
  PacketType type;
  Name exampleName;
  uint64_t bytes = 0;
  std::string signature = "SHA256ECDSA";
};

/// One row per key or content packet type present in the run.
std::vector<PacketSizeRow>
reportPacketSizes(const ScenarioReport& report);

std::string
formatPacketSizes(const std::vector<PacketSizeRow>& rows);

struct ScaleParams
{
  size_t n = 0; // decryptors
  size_t m = 0; // granularities
  size_t a = 0; // attributes
  /// Content Data per granularity; every decryptor consumes all of them.
  size_t x = 1;
};

/// Full-authorization scenario: every decryptor may read every granularity.
ScenarioConfig
makeScalingScenario(Scheme scheme, const ScaleParams& params, uint64_t seed = 0,
                    std::string abeProvider = "simulated");

struct ScalingReport
{
  Scheme scheme = Scheme::Nac;
  ScaleParams params;
  std::map<std::string, uint64_t> predicted;
  std::map<std::string, uint64_t> measured;
  ScenarioReport run;

  bool
  matches() const;
};

/// Predicted counts: NAC kek = m, kdk = m*n; NAC-ABE kek = m, issued_key = n.
ScalingReport
reportScaling(Scheme scheme, const ScaleParams& params, uint64_t seed = 0,
              std::string abeProvider = "simulated");

nlohmann::json
toJson(const ScalingReport& report);

struct ConfigBurden
{
  /// Name bindings written by hand, per entity id.
  std::map<std::string, size_t> perEntity;
  /// Per role: the same count if constant across entities, else -1.
  std::map<std::string, long> perRole;
  /// Key names (KEK/KDK/CK/KEY/ENCRYPTED-BY markers) found in the config text.
  size_t keyNamesInConfig = 0;
};

/// Name bindings an entity needs: identity, plus manager prefix and
/// granularity for encryptors and the authority prefix in NAC-ABE.
ConfigBurden
reportConfigBurden(const ScenarioConfig& cfg);

/// Count of key-name markers in a serialized config.
size_t
countKeyNames(std::string_view configText);

} // namespace nac::harness

#endif // NAC_HARNESS_RUNNER_HPP
