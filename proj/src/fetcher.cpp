#include "tagcrawl/fetcher.hpp"

#include <algorithm>

#include "tagcrawl/text.hpp"

namespace tagcrawl {

namespace {

// product token: "tagcrawl/1.0" -> "tagcrawl"
std::string agent_token(std::string_view user_agent) {
    size_t end = user_agent.find_first_of("/ \t");
    return ascii_fold(user_agent.substr(0, end == std::string_view::npos ? user_agent.size() : end));
}

}  // namespace

const char* fetch_status_name(FetchStatus s) {
    switch (s) {
        case FetchStatus::Ok: return "ok";
        case FetchStatus::HttpError: return "http_error";
        case FetchStatus::Timeout: return "timeout";
        case FetchStatus::TooLarge: return "too_large";
        case FetchStatus::RobotsDenied: return "robots_denied";
        case FetchStatus::TransportError: return "transport_error";
    }
    return "unknown";
}

bool RobotsPolicy::allows(std::string_view path) const {
    for (const auto& prefix : disallow_prefixes) {
        if (path.substr(0, prefix.size()) == prefix) return false;
    }
    return true;
}

RobotsPolicy parse_robots_txt(std::string_view body, std::string_view user_agent,
                              std::string host_key) {
    RobotsPolicy policy;
    policy.host = std::move(host_key);
    policy.fetched = true;

    struct Group {
        std::vector<std::string> agents;
        std::vector<std::string> disallows;
    };
    std::vector<Group> groups;
    Group current;
    bool in_agent_list = false;

    size_t pos = 0;
    while (pos <= body.size()) {
        size_t eol = body.find('\n', pos);
        std::string_view line = body.substr(pos, (eol == std::string_view::npos ? body.size() : eol) - pos);
        pos = eol == std::string_view::npos ? body.size() + 1 : eol + 1;

        size_t comment = line.find('#');
        if (comment != std::string_view::npos) line = line.substr(0, comment);
        std::string trimmed = trim(line);
        if (trimmed.empty()) continue;

        size_t colon = trimmed.find(':');
        if (colon == std::string::npos) continue;
        std::string field = ascii_fold(trim(std::string_view(trimmed).substr(0, colon)));
        std::string value = trim(std::string_view(trimmed).substr(colon + 1));

        if (field == "user-agent") {
            if (!in_agent_list) {
                // a new group starts; flush the previous one
                if (!current.agents.empty()) groups.push_back(std::move(current));
                current = Group{};
                in_agent_list = true;
            }
            current.agents.push_back(ascii_fold(value));
        } else {
            in_agent_list = false;
            if (field == "disallow" && !value.empty() && !current.agents.empty()) {
                current.disallows.push_back(value);
            }
        }
    }
    if (!current.agents.empty()) groups.push_back(std::move(current));

    const std::string token = agent_token(user_agent);
    auto matches = [&](const Group& g, bool wildcard) {
        for (const auto& agent : g.agents) {
            if (wildcard ? agent == "*" : (agent != "*" && token.find(agent) != std::string::npos)) {
                return true;
            }
        }
        return false;
    };

    bool any_specific = false;
    for (const auto& g : groups) {
        if (matches(g, false)) {
            any_specific = true;
            policy.disallow_prefixes.insert(policy.disallow_prefixes.end(), g.disallows.begin(),
                                            g.disallows.end());
        }
    }
    if (!any_specific) {
        for (const auto& g : groups) {
            if (matches(g, true)) {
                policy.disallow_prefixes.insert(policy.disallow_prefixes.end(), g.disallows.begin(),
                                                g.disallows.end());
            }
        }
    }
    return policy;
}

std::chrono::milliseconds Fetcher::politeness_wait(const std::string& host_key) {
    using std::chrono::milliseconds;
    if (limits_.min_delay.count() <= 0) return milliseconds(0);

    milliseconds start;
    milliseconds now;
    {
        // reserve the next free slot for this host, then sleep outside the lock
        std::lock_guard<std::mutex> lock(politeness_mu_);
        now = clock_->now();
        auto it = next_start_.find(host_key);
        start = it == next_start_.end() ? now : std::max(now, it->second);
        next_start_[host_key] = start + limits_.min_delay;
    }
    if (start > now) clock_->sleep_for(start - now);
    return start - now;
}

RobotsPolicy Fetcher::consult_robots(const CanonicalUrl& url) {
    const std::string key = url.scheme() + "://" + url.host_port_key();
    {
        std::lock_guard<std::mutex> lock(robots_mu_);
        auto it = robots_cache_.find(key);
        if (it != robots_cache_.end()) return it->second;
    }

    RobotsPolicy policy;
    policy.host = url.host_port_key();
    auto robots_url = canonicalize(key + "/robots.txt");
    if (robots_url) {
        TransportResponse resp = issue(*robots_url);
        if (resp.outcome == TransportResponse::Outcome::Ok && resp.status >= 200 &&
            resp.status < 300 && !resp.body_truncated) {
            policy = parse_robots_txt(resp.body, limits_.user_agent, url.host_port_key());
        }
        // anything else degrades to allow-all
    }

    std::lock_guard<std::mutex> lock(robots_mu_);
    auto [it, inserted] = robots_cache_.emplace(key, std::move(policy));
    return it->second;
}

TransportResponse Fetcher::issue(const CanonicalUrl& url) {
    politeness_wait(url.host_port_key());
    return transport_.get(url, limits_.max_body_bytes);
}

FetchResult Fetcher::fetch(const CanonicalUrl& url) {
    FetchResult result;
    result.url = url;
    result.fetched_at = std::chrono::system_clock::now();

    CanonicalUrl current = url;
    for (int hop = 0; hop <= limits_.max_redirects; ++hop) {
        result.url = current;

        if (limits_.respect_robots_txt) {
            RobotsPolicy policy = consult_robots(current);
            if (!policy.allows(current.path())) {
                result.status = FetchStatus::RobotsDenied;
                return result;
            }
        }

        TransportResponse resp = issue(current);
        if (resp.outcome == TransportResponse::Outcome::Timeout) {
            result.status = FetchStatus::Timeout;
            return result;
        }
        if (resp.outcome == TransportResponse::Outcome::Error) {
            result.status = FetchStatus::TransportError;
            return result;
        }

        result.http_status = resp.status;
        if (resp.status >= 300 && resp.status < 400 && resp.redirect_target) {
            auto next = canonicalize(*resp.redirect_target, &current);
            if (!next) {
                result.status = FetchStatus::TransportError;
                return result;
            }
            current = std::move(*next);
            continue;
        }
        if (resp.body_truncated) {
            result.status = FetchStatus::TooLarge;
            return result;
        }
        if (resp.status >= 200 && resp.status < 300) {
            result.status = FetchStatus::Ok;
            result.body = std::move(resp.body);
            if (!resp.content_type.empty()) result.content_type = resp.content_type;
            return result;
        }
        result.status = FetchStatus::HttpError;
        return result;
    }

    // redirect chain exceeded the limit
    result.status = FetchStatus::TransportError;
    return result;
}

}  // namespace tagcrawl
