#include "nac/entities/encryptor.hpp"
#include "nac/crypto/policy.hpp"
#include "nac/entities/payloads.hpp"

namespace nac {

EncryptorBase::EncryptorBase(sim::Network& net, sim::NodeId node, IdentityKeyPair identity,
                             crypto::Rng rng, const TrustStore& trust, EncryptorConfig config)
  : Entity(net, std::move(node), std::move(identity), std::move(rng), trust, config.retry)
  , m_config(std::move(config))
{
  naming::checkPrefix(m_config.producerPrefix, "producer");
  naming::checkPrefix(m_config.managerPrefix, "manager");
  naming::checkPrefix(m_config.granularity, "granularity");
  if (!prefix().isPrefixOf(m_config.producerPrefix))
    throw std::invalid_argument("producer prefix must lie under the encryptor identity");
}

void
EncryptorBase::produce(const Name& suffix, Bytes plaintext, ProduceCallback done)
{
  auto run = [this, suffix, plaintext = std::move(plaintext), done] {
    withKek([this, suffix, plaintext, done](std::optional<Error> err) {
      if (err) {
        done(Outcome<ProduceReport>::failure(err->code, err->detail));
        return;
      }
      ProduceReport report;
      report.kek = *m_kek;
      if (auto e = encryptAndPublish(suffix, plaintext, report)) {
        done(Outcome<ProduceReport>::failure(e->code, e->detail));
        return;
      }
      done(Outcome<ProduceReport>::success(std::move(report)));
    });
  };

  if (m_notifyCheckPending) {
    checkForReencrypt([run](const Outcome<ProduceReport>&) { run(); });
    return;
  }
  run();
}

void
EncryptorBase::withKek(Continuation cont)
{
  if (m_kek && m_net.now() < m_kekFetchedAt + m_config.kekTtl) {
    cont(std::nullopt);
    return;
  }
  m_kekWaiters.push_back(std::move(cont));
  if (m_kekFetchInFlight)
    return;
  m_kekFetchInFlight = true;

  InterestPacket interest;
  interest.name = naming::kekInterestName(m_config.managerPrefix, m_config.granularity);
  interest.canBePrefix = true;
  interest.mustBeFresh = true;
  ++m_kekInterests;
  m_fetcher.fetch(interest, [this](const sim::FetchResult& r) {
    acceptKek(r, std::nullopt, [this](std::optional<Error> err) {
      m_kekFetchInFlight = false;
      auto waiters = std::move(m_kekWaiters);
      m_kekWaiters.clear();
      for (auto& w : waiters)
        w(err);
    });
  });
}

void
EncryptorBase::acceptKek(const sim::FetchResult& r, std::optional<Name> expected, Continuation cont)
{
  if (r.status != sim::FetchStatus::Satisfied) {
    cont(Error{ErrorCode::KekUnavailable, "KEK not retrievable (" + std::string(toString(r.status)) + ")"});
    return;
  }
  if (!m_crypto.verify(m_trust, r.data)) {
    cont(Error{ErrorCode::KekUnavailable, "KEK Data failed verification"});
    return;
  }
  try {
    auto kek = naming::parseKekName(r.data.name);
    if (kek.manager != m_config.managerPrefix || kek.granularity != m_config.granularity ||
        (expected && *expected != r.data.name))
      throw naming::NotAConventionName("KEK for a different granularity");
    installKek(kek, r.data);
    if (!m_kek || *m_kek != kek) {
      m_ck.reset();
      m_ckDataName.reset();
      m_wrappedCk.reset();
    }
    m_kek = kek;
    m_kekFetchedAt = m_net.now();
  }
  catch (const crypto::PolicySyntaxError& e) {
    cont(Error{ErrorCode::PolicySyntaxError, e.what()});
    return;
  }
  catch (const std::exception& e) {
    cont(Error{ErrorCode::KekUnavailable, e.what()});
    return;
  }
  cont(std::nullopt);
}

void
EncryptorBase::fetchExactKek(const Name& kekName, Continuation cont)
{
  InterestPacket interest;
  interest.name = kekName;
  ++m_kekInterests;
  m_fetcher.fetch(interest, [this, kekName, cont](const sim::FetchResult& r) {
    acceptKek(r, kekName, cont);
  });
}

std::optional<Error>
EncryptorBase::encryptAndPublish(const Name& suffix, const Bytes& plaintext, ProduceReport& report)
{
  Name contentName = Name(m_config.producerPrefix).append(suffix);
  try {
    if (!m_ck) {
      crypto::ContentKey ck = m_crypto.generateCk();
      auto ckData = naming::makeCkDataName(naming::makeCkName(m_config.producerPrefix, ck.ckId), *m_kek);
      auto wrapped = wrapCk(ck);
      m_ck = ck;
      m_ckDataName = ckData;
      m_wrappedCk = wrapped;
      if (!m_config.embedCk)
        report.packets.push_back(signAndPublish(ckData.toName(), CkPayload{wrapped}.encode(),
                                                KEY_FRESHNESS));
    }

    auto env = m_crypto.encryptContent(*m_ck, plaintext);
    ContentPayload payload;
    payload.ckName = m_ckDataName->ck.toName();
    payload.iv = env.params;
    payload.ciphertext = env.ciphertext;
    if (m_config.embedCk)
      payload.embeddedCk = ContentPayload::Embedded{m_ckDataName->toName(), *m_wrappedCk};
    report.packets.push_back(signAndPublish(contentName, payload.encode(), CONTENT_FRESHNESS));
  }
  catch (const crypto::PolicySyntaxError& e) {
    return Error{ErrorCode::PolicySyntaxError, e.what()};
  }
  catch (const std::exception& e) {
    return Error{ErrorCode::KekUnavailable, std::string("encryption failed: ") + e.what()};
  }
  m_retained[suffix] = plaintext;
  return std::nullopt;
}

void
EncryptorBase::checkForReencrypt(ProduceCallback done)
{
  InterestPacket interest;
  interest.name = naming::notifyPrefix(m_config.managerPrefix, m_config.granularity);
  interest.canBePrefix = true;
  interest.mustBeFresh = true;
  m_fetcher.fetch(interest, [this, done](const sim::FetchResult& r) {
    if (r.status != sim::FetchStatus::Satisfied) {
      m_notifyCheckPending = true;
      done(Outcome<ProduceReport>::failure(ErrorCode::FetchTimeout, "no re-encryption notice"));
      return;
    }
    m_notifyCheckPending = false;
    NotifyPayload notice;
    try {
      if (!m_crypto.verify(m_trust, r.data))
        throw std::runtime_error("notice failed verification");
      notice = NotifyPayload::decode(r.data.content);
    }
    catch (const std::exception& e) {
      done(Outcome<ProduceReport>::failure(ErrorCode::SignatureInvalid, e.what()));
      return;
    }
    if (notice.epoch <= m_notifiedEpoch) {
      ProduceReport none;
      if (m_kek)
        none.kek = *m_kek;
      done(Outcome<ProduceReport>::success(std::move(none)));
      return;
    }
    uint64_t epoch = notice.epoch;
    fetchExactKek(notice.kekName, [this, epoch, done](std::optional<Error> err) {
      if (err) {
        m_notifyCheckPending = true;
        done(Outcome<ProduceReport>::failure(err->code, err->detail));
        return;
      }
      m_notifiedEpoch = epoch;
      reproduceAll(done);
    });
  });
}

void
EncryptorBase::reproduceAll(ProduceCallback done)
{
  // fresh CK under the new KEK even if one was already generated for it
  m_ck.reset();
  m_ckDataName.reset();
  m_wrappedCk.reset();
  ProduceReport report;
  report.kek = *m_kek;
  auto retained = m_retained;
  for (const auto& [suffix, plaintext] : retained) {
    if (auto e = encryptAndPublish(suffix, plaintext, report)) {
      done(Outcome<ProduceReport>::failure(e->code, e->detail));
      return;
    }
  }
  done(Outcome<ProduceReport>::success(std::move(report)));
}

void
Encryptor::installKek(const naming::KekName&, const DataPacket& data)
{
  crypto::RsaPublicKey key{data.content};
  crypto::validateRsaPublicKey(key);
  m_kekKey = std::move(key);
}

crypto::EncryptedEnvelope
Encryptor::wrapCk(const crypto::ContentKey& ck)
{
  return m_crypto.wrap(m_kekKey, ck.keyBytes);
}

} // namespace nac
