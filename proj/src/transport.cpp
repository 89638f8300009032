#include "tagcrawl/transport.hpp"

#ifdef TAGCRAWL_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

namespace tagcrawl {

TransportResponse CorpusTransport::get(const CanonicalUrl& url, size_t max_body_bytes) {
    TransportResponse resp;
    const CorpusEntry* entry = manifest_.find(url.text());
    if (!entry) {
        resp.outcome = TransportResponse::Outcome::Error;
        resp.error = "not in corpus: " + url.text();
        return resp;
    }
    if (entry->simulate) {
        resp.outcome = *entry->simulate == "timeout" ? TransportResponse::Outcome::Timeout
                                                     : TransportResponse::Outcome::Error;
        resp.error = "simulated " + *entry->simulate;
        return resp;
    }
    resp.outcome = TransportResponse::Outcome::Ok;
    resp.status = entry->status;
    resp.content_type = entry->content_type;
    resp.redirect_target = entry->redirect;
    if (entry->body.size() > max_body_bytes) {
        resp.body_truncated = true;
        resp.body = entry->body.substr(0, max_body_bytes);
    } else {
        resp.body = entry->body;
    }
    return resp;
}

TransportResponse HttpTransport::get(const CanonicalUrl& url, size_t max_body_bytes) {
    TransportResponse resp;

    std::string origin = url.scheme() + "://" + url.host();
    if (!url.has_default_port()) origin += ":" + std::to_string(url.port());

#ifndef TAGCRAWL_HAVE_OPENSSL
    if (url.scheme() == "https") {
        resp.error = "built without TLS support";
        return resp;
    }
#endif

    httplib::Client client(origin);
    client.set_follow_location(false);  // redirects are handled by the fetcher
    auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
    auto remainder = timeout_ - std::chrono::duration_cast<std::chrono::milliseconds>(seconds);
    client.set_connection_timeout(seconds.count(), remainder.count() * 1000);
    client.set_read_timeout(seconds.count(), remainder.count() * 1000);

    std::string target = url.path();
    if (url.query()) target += "?" + *url.query();

    httplib::Headers headers = {{"User-Agent", user_agent_}, {"Accept", "*/*"}};

    std::string body;
    bool truncated = false;
    auto result = client.Get(
        target, headers,
        [&](const httplib::Response&) { return true; },
        [&](const char* data, size_t length) {
            if (body.size() + length > max_body_bytes) {
                truncated = true;
                body.append(data, max_body_bytes - body.size());
                return false;  // stop reading
            }
            body.append(data, length);
            return true;
        });

    if (!result) {
        if (truncated) {
            // we aborted the read ourselves
            resp.outcome = TransportResponse::Outcome::Ok;
            resp.status = 200;
            resp.body_truncated = true;
            return resp;
        }
        switch (result.error()) {
            case httplib::Error::ConnectionTimeout:
            case httplib::Error::Read:
                resp.outcome = TransportResponse::Outcome::Timeout;
                resp.error = "timeout";
                break;
            default:
                resp.outcome = TransportResponse::Outcome::Error;
                resp.error = httplib::to_string(result.error());
                break;
        }
        return resp;
    }

    resp.outcome = TransportResponse::Outcome::Ok;
    resp.status = result->status;
    resp.body = std::move(body);
    resp.body_truncated = truncated;
    resp.content_type = result->get_header_value("Content-Type");
    if (result->has_header("Location")) {
        resp.redirect_target = result->get_header_value("Location");
    }
    return resp;
}

}  // namespace tagcrawl
