from config.settings import config
